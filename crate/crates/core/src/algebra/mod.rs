//! Carriers, operation tables and the signature abstraction.
//!
//! Elements of a finite algebra are the indices `0..size`; an operation is a
//! flattened `size * size` table in row-major order where the row selects the
//! left operand. Both concrete types ([`FiniteMonoid`], [`FiniteSemiring`])
//! implement [`Algebra`], which is what makes the constructions, classifiers
//! and enumerators signature-generic.
//!
//! # Invariants
//!
//! - Operation index 0 is always the designated pointed operation used by the
//!   Schreier-style classifiers: the monoid operation itself, addition for
//!   semirings. [`Algebra::neutral`] is its unit.
//! - Values of both concrete types always satisfy their laws: the checked
//!   constructors reject violations, and the crate-internal trusted
//!   constructors are only called by operations whose output is valid by
//!   construction (products, closed subalgebras, quotients by congruences).

mod iso;
mod monoid;
mod morphism;
mod semiring;

pub use iso::are_isomorphic;
pub use monoid::{validate_monoid, FiniteMonoid};
pub use morphism::{compose, identity, kernel, validate_morphism, Morphism, Point};
pub(crate) use morphism::subalgebra;
pub use semiring::{validate_semiring, FiniteSemiring};

use crate::error::{LawViolation, OpLabel};

/// A finite algebra given by operation tables over the carrier `0..size`.
pub trait Algebra:
    Clone + std::fmt::Debug + PartialEq + Eq + std::hash::Hash + Send + Sync + 'static
{
    /// Number of binary operations in the signature.
    const OP_COUNT: usize;
    /// Report labels of the operations, indexed like [`Algebra::op`].
    const OP_LABELS: &'static [OpLabel];
    /// Signature tag used in reports and file headers.
    const SIGNATURE: &'static str;

    fn size(&self) -> usize;

    /// Unit of operation 0 (monoid identity, semiring zero).
    fn neutral(&self) -> usize;

    /// Flattened table of the given operation.
    fn table(&self, which: usize) -> &[usize];

    /// Validating constructor from flattened tables, one per operation.
    fn from_tables(
        size: usize,
        neutral: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self, LawViolation>;

    /// Construction backdoor for internally derived tables that are valid by
    /// construction. Not exposed outside the crate.
    #[doc(hidden)]
    fn from_tables_trusted(size: usize, neutral: usize, tables: Vec<Vec<usize>>) -> Self;

    #[inline]
    fn op(&self, which: usize, a: usize, b: usize) -> usize {
        self.table(which)[a * self.size() + b]
    }

    /// The designated pointed operation (operation 0).
    #[inline]
    fn pointed_op(&self, a: usize, b: usize) -> usize {
        self.op(0, a, b)
    }

    fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }
}

/// Checks that `elems` contains the neutral element and is closed under every
/// operation of `a`. Returns the first closure failure as a witness triple
/// `(op, x, y)`, or None if closed.
pub(crate) fn closure_failure<A: Algebra>(
    a: &A,
    member: &[bool],
) -> Option<(usize, usize, usize)> {
    if !member[a.neutral()] {
        return Some((usize::MAX, a.neutral(), a.neutral()));
    }
    for which in 0..A::OP_COUNT {
        for x in a.elements() {
            if !member[x] {
                continue;
            }
            for y in a.elements() {
                if member[y] && !member[a.op(which, x, y)] {
                    return Some((which, x, y));
                }
            }
        }
    }
    None
}
