//! Finite-monoid and finite-semiring Galois structures, computed exactly.
//!
//! Everything in this crate works on multiplication tables over carriers
//! `0..size`, so every categorical statement is decided by finite search:
//! completions are built as explicit quotients, extension properties are
//! checked element by element, and the survey layer sweeps entire
//! isomorphism classes of small algebras looking for counterexamples.
//!
//! # Module map
//!
//! - [`algebra`]: carriers, operation tables, law validation, morphisms,
//!   points (split epimorphisms with a chosen section), isomorphism search.
//! - [`construct`]: products, pullbacks, kernel pairs, congruences and their
//!   closure, quotients, coequalizers of parallel pairs, image factorization.
//! - [`enumerate`]: exhaustive enumeration of monoids, semirings,
//!   homomorphisms, surjections and points, with canonical-form dedup.
//! - [`complete`]: the three reflections (monoids to groups, monoids to
//!   abelian groups, semirings to rings), unit morphisms, reflector action
//!   on morphisms, universal-property verification.
//! - [`classify`]: Schreier and homogeneity conditions for points, and the
//!   trivial / central / normal extension classifiers for surjections.
//! - [`normalize`]: trivialization of a fibration over its base, the
//!   normalization construction, its universal property probe, and the
//!   closure check for coequalizers of reflexive graphs of arrows.
//! - [`survey`]: named exhaustive sweeps with tally reports.
//! - [`io`]: the text formats for algebras and homomorphisms.
//! - [`samples`]: small named algebras used throughout tests and docs.
//!
//! Verdicts are three-valued (`true` / `false` / `inconclusive`);
//! `inconclusive` only ever arises from the element bound on the general
//! group completion, never from a skipped check.

pub mod algebra;
pub mod classify;
pub mod complete;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod normalize;
pub mod samples;
pub mod survey;

pub use algebra::{FiniteMonoid, FiniteSemiring, Morphism, Point};
pub use classify::Verdict;
pub use complete::{ContextId, GaloisContext, ReflectionResult};
