//! Point and extension classifiers.
//!
//! Points (split surjections with a chosen section) are classified through
//! the designated pointed operation: the first operation of the signature,
//! monoid multiplication or semiring addition. A point satisfies the
//! representation condition when every source element factors uniquely as
//! a kernel element times the section image of its fiber; it is
//! homogeneous on a side when translating the kernel by each section value
//! sweeps out the corresponding fiber bijectively.
//!
//! Extensions (surjections) are classified against a reflection:
//!
//! - **trivial** when the unit square over the morphism is a pullback,
//!   checked through the comparison into the explicit pullback;
//! - **normal** when the kernel pair projection is trivial (the second
//!   projection must agree by symmetry, and disagreement is a bug, so it
//!   is asserted, not reported);
//! - **central** when some surjection pulls the extension back to a
//!   trivial one. The decision procedure uses the subcategory
//!   characterizations (special homogeneity, plus a commuting kernel in
//!   the abelian case); the witness search over small bases exists as an
//!   independent cross-check and reports how far it looked.

use std::sync::Arc;

use crate::algebra::{identity, kernel, Algebra, Morphism, Point};
use crate::complete::{ContextId, GaloisContext, Inconclusive};
use crate::construct::{kernel_pair, product, pullback, terminal_morphism};
use crate::enumerate::{enumerate_surjections, Enumerable};
use crate::error::Side;
use thiserror::Error;

/// Largest base order the central witness search will enumerate, whatever
/// bound the caller asks for. Full sweeps past this order are out of reach;
/// reports carry both the requested and the searched bound.
pub const MAX_WITNESS_POOL_ORDER: usize = 6;

/// The unique factorization data of a point satisfying the representation
/// condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierDecomposition {
    /// Source elements lying over the target neutral, in index order.
    pub kernel_elements: Vec<usize>,
    /// For each source element, the unique kernel element representing it.
    pub q_map: Vec<usize>,
}

/// Why a point fails the representation condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchreierFailure {
    #[error("element {a} is not a kernel element times the section value over it")]
    NoRepresentation { a: usize },

    #[error("element {a} factors through kernel elements {first} and {second}")]
    AmbiguousRepresentation { a: usize, first: usize, second: usize },
}

/// The unique-representation condition: every source element is a kernel
/// element composed with the section value over its image, in exactly one
/// way.
pub fn schreier_decomposition<A: Algebra>(
    p: &Point<A>,
) -> Result<SchreierDecomposition, SchreierFailure> {
    let f = p.epi();
    let s = p.section();
    let src = f.source();
    let neutral_fiber: Vec<usize> = src
        .elements()
        .filter(|&a| f.apply(a) == f.target().neutral())
        .collect();
    let mut q_map = Vec::with_capacity(src.size());
    for a in src.elements() {
        let through = s.apply(f.apply(a));
        let mut found = None;
        for &alpha in &neutral_fiber {
            if src.pointed_op(alpha, through) == a {
                match found {
                    None => found = Some(alpha),
                    Some(first) => {
                        return Err(SchreierFailure::AmbiguousRepresentation {
                            a,
                            first,
                            second: alpha,
                        })
                    }
                }
            }
        }
        match found {
            Some(alpha) => q_map.push(alpha),
            None => return Err(SchreierFailure::NoRepresentation { a }),
        }
    }
    Ok(SchreierDecomposition {
        kernel_elements: neutral_fiber,
        q_map,
    })
}

pub fn is_schreier_point<A: Algebra>(p: &Point<A>) -> bool {
    schreier_decomposition(p).is_ok()
}

/// Why translating the kernel fails to sweep a fiber.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomogeneityFailure {
    #[error("{side} translation over {b} sends both {a1} and {a2} to {image}")]
    NotInjective {
        side: Side,
        b: usize,
        a1: usize,
        a2: usize,
        image: usize,
    },

    #[error("{side} translation over {b} misses fiber element {missed}")]
    NotSurjective { side: Side, b: usize, missed: usize },
}

/// Checks that translating the kernel by each section value is a bijection
/// onto the fiber over that value, on the given side.
pub fn check_homogeneous<A: Algebra>(p: &Point<A>, side: Side) -> Result<(), HomogeneityFailure> {
    let f = p.epi();
    let s = p.section();
    let src = f.source();
    let neutral_fiber: Vec<usize> = src
        .elements()
        .filter(|&a| f.apply(a) == f.target().neutral())
        .collect();
    for b in f.target().elements() {
        let through = s.apply(b);
        let mut hit = vec![usize::MAX; src.size()];
        for &alpha in &neutral_fiber {
            let image = match side {
                Side::Right => src.pointed_op(alpha, through),
                Side::Left => src.pointed_op(through, alpha),
            };
            if hit[image] != usize::MAX {
                return Err(HomogeneityFailure::NotInjective {
                    side,
                    b,
                    a1: hit[image],
                    a2: alpha,
                    image,
                });
            }
            hit[image] = alpha;
        }
        for a in src.elements() {
            if f.apply(a) == b && hit[a] == usize::MAX {
                return Err(HomogeneityFailure::NotSurjective { side, b, missed: a });
            }
        }
    }
    Ok(())
}

/// Homogeneous on both sides.
pub fn is_homogeneous_point<A: Algebra>(p: &Point<A>) -> bool {
    check_homogeneous(p, Side::Right).is_ok() && check_homogeneous(p, Side::Left).is_ok()
}

/// The canonical point over a surjection: the kernel pair with its first
/// projection and the diagonal section. The surjection is special
/// homogeneous when that point is homogeneous on both sides.
pub fn special_homogeneity<A: Algebra>(f: &Morphism<A>) -> Result<(), HomogeneityFailure> {
    assert!(f.is_surjective(), "special homogeneity asks a surjection");
    let kp = kernel_pair(f);
    let point = Point::new(kp.span.left, kp.diagonal)
        .expect("the diagonal splits the kernel pair projection");
    check_homogeneous(&point, Side::Right)?;
    check_homogeneous(&point, Side::Left)
}

pub fn is_special_homogeneous<A: Algebra>(f: &Morphism<A>) -> bool {
    special_homogeneity(f).is_ok()
}

/// Whether the morphism onto the one element algebra is special
/// homogeneous.
pub fn is_special_object<A: Algebra>(a: &Arc<A>) -> bool {
    is_special_homogeneous(&terminal_morphism(a))
}

/// The cooperator of two embeddings, when they commute: the morphism on
/// the product of their sources that restricts to each of them. For the
/// pointed operation in use, the only candidate sends a pair to the
/// operation applied to the two images, so commuting is the candidate
/// being a morphism.
pub fn cooperator<A: Algebra>(
    left: &Morphism<A>,
    right: &Morphism<A>,
) -> Option<Morphism<A>> {
    assert_eq!(left.target(), right.target(), "embeddings must share a target");
    assert!(
        left.is_injective() && right.is_injective(),
        "cooperators are defined for embeddings"
    );
    let span = product(left.source(), right.source());
    let m = right.source().size();
    let ambient = left.target();
    let map: Vec<usize> = span
        .apex
        .elements()
        .map(|i| ambient.pointed_op(left.apply(i / m), right.apply(i % m)))
        .collect();
    Morphism::new(span.apex.clone(), ambient.clone(), map).ok()
}

/// Whether the kernel of a surjection commutes with the whole source.
pub fn kernel_commutes<A: Algebra>(f: &Morphism<A>) -> bool {
    let (_, embedding) = kernel(f);
    cooperator(&embedding, &identity(f.source())).is_some()
}

/// A cooperator query was handed a morphism that is not an embedding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the {which} morphism is not injective, so it embeds nothing")]
pub struct EmbeddingError {
    pub which: &'static str,
}

/// Whether two embedded subobjects commute elementwise inside their shared
/// ambient object, reported together with the cooperator in the positive
/// case. Unlike [`cooperator`], non-injective inputs are an error value
/// rather than a programming mistake.
pub fn commutes<A: Algebra>(
    x_embed: &Morphism<A>,
    y_embed: &Morphism<A>,
) -> Result<Option<Morphism<A>>, EmbeddingError> {
    assert_eq!(
        x_embed.target(),
        y_embed.target(),
        "embeddings must share a target"
    );
    if !x_embed.is_injective() {
        return Err(EmbeddingError { which: "left" });
    }
    if !y_embed.is_injective() {
        return Err(EmbeddingError { which: "right" });
    }
    Ok(cooperator(x_embed, y_embed))
}

/// Evidence attached to a failing classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Obstruction {
    #[error("comparison into the unit square pullback identifies {a1} and {a2}")]
    ComparisonNotInjective { a1: usize, a2: usize },

    #[error("comparison into the unit square pullback misses the pair ({b}, {x})")]
    ComparisonNotSurjective { b: usize, x: usize },

    #[error("kernel pair projection is not a trivial extension: {0}")]
    KernelPairNotTrivial(Box<Obstruction>),

    #[error("{0}")]
    NotSpecialHomogeneous(HomogeneityFailure),

    #[error("the kernel does not commute with the source")]
    KernelDoesNotCommute,

    #[error("no trivializing base found among surjections from order at most {searched}")]
    NoWitnessFound { searched: usize },
}

/// A classification outcome with optional evidence and context notes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub obstruction: Option<Obstruction>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict {
            holds: true,
            obstruction: None,
            note: None,
        }
    }

    pub fn no(obstruction: Obstruction) -> Self {
        Verdict {
            holds: false,
            obstruction: Some(obstruction),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Whether the unit square over `f` is a pullback: the comparison from the
/// source into the pullback of the reflected morphism against the unit of
/// the target must be bijective.
pub fn is_trivial_extension<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    f: &Morphism<A>,
) -> Result<Verdict, Inconclusive> {
    assert!(f.is_surjective(), "extensions are surjections");
    let rf = ctx.apply_to(f)?;
    let square = pullback(&rf.target.unit, &rf.map);
    // Comparison legs: f and the unit of the source.
    let mut position = vec![usize::MAX; f.target().size() * rf.source.object.size()];
    let width = rf.source.object.size();
    for i in square.apex.elements() {
        position[square.left.apply(i) * width + square.right.apply(i)] = i;
    }
    let mut hit = vec![usize::MAX; square.apex.size()];
    for a in f.source().elements() {
        let i = position[f.apply(a) * width + rf.source.unit.apply(a)];
        debug_assert!(i != usize::MAX, "unit square does not commute");
        if hit[i] != usize::MAX {
            return Ok(Verdict::no(Obstruction::ComparisonNotInjective {
                a1: hit[i],
                a2: a,
            }));
        }
        hit[i] = a;
    }
    for i in square.apex.elements() {
        if hit[i] == usize::MAX {
            return Ok(Verdict::no(Obstruction::ComparisonNotSurjective {
                b: square.left.apply(i),
                x: square.right.apply(i),
            }));
        }
    }
    Ok(Verdict::yes())
}

/// Whether the kernel pair projection of `f` is a trivial extension. Both
/// projections are checked; they cannot disagree, and an actual
/// disagreement panics rather than producing a verdict.
pub fn is_normal_extension<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    f: &Morphism<A>,
) -> Result<Verdict, Inconclusive> {
    assert!(f.is_surjective(), "extensions are surjections");
    let kp = kernel_pair(f);
    let first = is_trivial_extension(ctx, &kp.span.left)?;
    let second = is_trivial_extension(ctx, &kp.span.right)?;
    assert_eq!(
        first.holds, second.holds,
        "kernel pair projections disagree on triviality; the swap symmetry is broken"
    );
    Ok(match first.obstruction {
        None => Verdict::yes(),
        Some(o) => Verdict::no(Obstruction::KernelPairNotTrivial(Box::new(o))),
    })
}

/// Whether `f` becomes trivial after pulling back along some surjection.
///
/// Decided by the subcategory characterizations: special homogeneity for
/// groups and rings, special homogeneity with a commuting kernel for
/// abelian groups. [`central_witness_search`] probes the defining property
/// directly.
pub fn is_central_extension<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    f: &Morphism<A>,
) -> Result<Verdict, Inconclusive> {
    assert!(f.is_surjective(), "extensions are surjections");
    match ctx.id() {
        ContextId::MonGp | ContextId::SRngRng => Ok(match special_homogeneity(f) {
            Ok(()) => Verdict::yes(),
            Err(h) => Verdict::no(Obstruction::NotSpecialHomogeneous(h)),
        }),
        ContextId::MonAb => {
            if let Err(h) = special_homogeneity(f) {
                return Ok(Verdict::no(Obstruction::NotSpecialHomogeneous(h)));
            }
            if !kernel_commutes(f) {
                return Ok(Verdict::no(Obstruction::KernelDoesNotCommute));
            }
            Ok(Verdict::yes())
        }
    }
}

/// Normality of a surjection decided entirely inside the source algebra:
/// the extension must be special homogeneous and its kernel must commute
/// with everything. No reflector runs, so the answer is always conclusive,
/// and over the abelianization context it matches [`is_normal_extension`].
pub fn classify_gamma_ab_normal<A: Algebra>(f: &Morphism<A>) -> Verdict {
    assert!(f.is_surjective(), "extensions are surjections");
    if let Err(h) = special_homogeneity(f) {
        return Verdict::no(Obstruction::NotSpecialHomogeneous(h));
    }
    let (_, embedding) = kernel(f);
    match commutes(&embedding, &identity(f.source())) {
        Ok(Some(_)) => Verdict::yes(),
        Ok(None) => Verdict::no(Obstruction::KernelDoesNotCommute),
        Err(_) => unreachable!("kernel embeddings and identities are injective"),
    }
}

/// Whether the first projection out of the square on `x` is a trivial
/// extension. Over the abelianization context this picks out exactly the
/// abelian group objects; over the group context it picks out the objects
/// that already lie in the subcategory. Commutativity alone is not enough:
/// a commutative object whose completion collapses fails the comparison.
pub fn is_s_special_object<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    x: &Arc<A>,
) -> Result<bool, Inconclusive> {
    let square = product(x, x);
    Ok(is_trivial_extension(ctx, &square.left)?.holds)
}

/// Outcome of the direct search for a trivializing base.
#[derive(Debug, Clone)]
pub struct CentralWitnessReport<A: Algebra> {
    pub requested_order_bound: usize,
    pub searched_order_bound: usize,
    pub candidates_checked: usize,
    /// Candidates whose triviality check hit the completion room bound.
    pub inconclusive_candidates: usize,
    /// A surjection pulling the extension back to a trivial one.
    pub witness: Option<Morphism<A>>,
}

impl<A: Algebra> CentralWitnessReport<A> {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    /// One line describing how far the search went.
    pub fn describe(&self) -> String {
        let cap = if self.searched_order_bound < self.requested_order_bound {
            format!(
                " (requested order bound {} capped at {})",
                self.requested_order_bound, self.searched_order_bound
            )
        } else {
            String::new()
        };
        match &self.witness {
            Some(w) => format!(
                "trivializing base of order {} found after {} candidates{cap}",
                w.source().size(),
                self.candidates_checked,
            ),
            None => format!(
                "no trivializing base among {} candidates from orders 1..={}{cap}, \
                 {} inconclusive",
                self.candidates_checked, self.searched_order_bound, self.inconclusive_candidates
            ),
        }
    }
}

/// Searches surjections onto the base of `f`, from the extension itself
/// and then from every algebra of order up to the bound, for one whose
/// pullback makes `f` trivial.
///
/// The pool is capped at order [`MAX_WITNESS_POOL_ORDER`]; the report
/// records both the requested and the effective bound. Not finding a
/// witness within the pool proves nothing, which is why this is the
/// cross-check and not the decision procedure.
pub fn central_witness_search<A: Enumerable>(
    ctx: &dyn GaloisContext<A>,
    f: &Morphism<A>,
    requested_order_bound: usize,
) -> Result<CentralWitnessReport<A>, Inconclusive> {
    assert!(f.is_surjective(), "extensions are surjections");
    let searched = requested_order_bound.min(MAX_WITNESS_POOL_ORDER);
    let mut checked = 0;
    let mut inconclusive = 0;
    let mut try_candidate = |p: &Morphism<A>| -> Result<bool, ()> {
        checked += 1;
        let pulled = pullback(p, f);
        match is_trivial_extension(ctx, &pulled.left) {
            Ok(v) => Ok(v.holds),
            Err(_) => {
                inconclusive += 1;
                Err(())
            }
        }
    };
    // The extension trivializes itself exactly when it is normal; probing
    // it first makes the search cheap on the common case.
    let mut witness = match try_candidate(&f.clone()) {
        Ok(true) => Some(f.clone()),
        _ => None,
    };
    if witness.is_none() {
        'search: for order in 1..=searched {
            for e in A::classes_up_to_iso(order).iter() {
                for p in enumerate_surjections(e, f.target()) {
                    if let Ok(true) = try_candidate(&p) {
                        witness = Some(p);
                        break 'search;
                    }
                }
            }
        }
    }
    Ok(CentralWitnessReport {
        requested_order_bound,
        searched_order_bound: searched,
        candidates_checked: checked,
        inconclusive_candidates: inconclusive,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::{ToAbelianGroups, ToGroups};
    use crate::construct::terminal_morphism;
    use crate::samples;

    fn height() -> Morphism<crate::FiniteMonoid> {
        Morphism::new(samples::n3(), samples::b2(), vec![0, 1, 1]).unwrap()
    }

    #[test]
    fn saturated_point_is_not_schreier() {
        // The only section picks the top element, which no kernel element
        // reaches 1 through.
        let f = Morphism::new(samples::k3(), samples::b2(), vec![0, 1, 1]).unwrap();
        let s = Morphism::new(samples::b2(), samples::k3(), vec![0, 2]).unwrap();
        let p = Point::new(f, s).unwrap();
        assert_eq!(
            schreier_decomposition(&p),
            Err(SchreierFailure::NoRepresentation { a: 1 })
        );
    }

    #[test]
    fn product_projection_points_are_schreier_and_homogeneous() {
        let span = product(&samples::z(2), &samples::n3());
        let constant = Morphism::new(samples::z(2), samples::n3(), vec![0, 0]).unwrap();
        let section =
            crate::construct::pair_into(&span, &identity(&samples::z(2)), &constant);
        let p = Point::new(span.left.clone(), section).unwrap();
        let d = schreier_decomposition(&p).unwrap();
        assert_eq!(d.kernel_elements.len(), 3);
        assert!(is_homogeneous_point(&p));
    }

    #[test]
    fn groups_are_special_objects_and_semilattices_are_not() {
        assert!(is_special_object(&samples::z(4)));
        assert!(is_special_object(&samples::s3()));
        assert!(!is_special_object(&samples::b2()));
        assert!(!is_special_object(&samples::n3()));
    }

    #[test]
    fn terminal_map_of_the_join_semilattice_fails_homogeneity() {
        // Over the top element both kernel pairs translate to the same
        // place, so injectivity breaks before the missed fiber element is
        // reached.
        let err = special_homogeneity(&terminal_morphism(&samples::b2())).unwrap_err();
        assert_eq!(
            err,
            HomogeneityFailure::NotInjective {
                side: Side::Right,
                b: 1,
                a1: 0,
                a2: 1,
                image: 3,
            }
        );
    }

    #[test]
    fn kernel_commutes_for_central_group_extensions() {
        // The sign map off the symmetric group has the three cycle
        // subgroup as kernel, which is not central in it; the kernel of
        // the cyclic reduction is central.
        let sgn = Morphism::new(samples::s3(), samples::z(2), vec![0, 1, 1, 1, 0, 0]).unwrap();
        assert!(!kernel_commutes(&sgn));
        let red = Morphism::new(samples::z(4), samples::z(2), vec![0, 1, 0, 1]).unwrap();
        assert!(kernel_commutes(&red));
    }

    #[test]
    fn group_morphisms_are_trivial_extensions_for_the_group_context() {
        let ctx = ToGroups::default();
        let sgn = Morphism::new(samples::s3(), samples::z(2), vec![0, 1, 1, 1, 0, 0]).unwrap();
        assert!(is_trivial_extension(&ctx, &sgn).unwrap().holds);
    }

    #[test]
    fn collapsing_the_join_semilattice_is_not_trivial() {
        let ctx = ToGroups::default();
        let v = is_trivial_extension(&ctx, &terminal_morphism(&samples::b2())).unwrap();
        assert!(!v.holds);
        assert!(matches!(
            v.obstruction,
            Some(Obstruction::ComparisonNotInjective { .. })
        ));
    }

    #[test]
    fn height_map_is_not_normal_for_abelian_groups() {
        let ctx = ToAbelianGroups;
        let v = is_normal_extension(&ctx, &height()).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn group_extensions_are_normal_for_abelian_groups() {
        let ctx = ToAbelianGroups;
        let red = Morphism::new(samples::z(4), samples::z(2), vec![0, 1, 0, 1]).unwrap();
        assert!(is_normal_extension(&ctx, &red).unwrap().holds);
    }

    #[test]
    fn projection_from_a_group_product_is_central_both_ways() {
        let ctx = ToGroups::default();
        let span = product(&samples::b2(), &samples::z(2));
        let f = span.left.clone();
        assert!(is_central_extension(&ctx, &f).unwrap().holds);
        let report = central_witness_search(&ctx, &f, 9).unwrap();
        assert_eq!(report.searched_order_bound, MAX_WITNESS_POOL_ORDER);
        assert_eq!(report.requested_order_bound, 9);
        assert!(report.found());
    }

    #[test]
    fn height_map_is_not_central_and_has_no_small_witness() {
        let ctx = ToGroups::default();
        let f = height();
        assert!(!is_central_extension(&ctx, &f).unwrap().holds);
        let report = central_witness_search(&ctx, &f, 3).unwrap();
        assert!(!report.found());
        assert!(report.candidates_checked > 1);
    }

    #[test]
    fn sign_map_is_central_only_after_widening_the_base() {
        // The three cycles do not commute with everything, so the sign map
        // is not a normal extension's kernel pair route; it is still
        // central for groups, and the self witness fails while a product
        // base succeeds.
        let ctx = ToGroups::default();
        let sgn = Morphism::new(samples::s3(), samples::z(2), vec![0, 1, 1, 1, 0, 0]).unwrap();
        assert!(is_central_extension(&ctx, &sgn).unwrap().holds);
    }

    #[test]
    fn intrinsic_normality_matches_the_reflector_route() {
        let ctx = ToAbelianGroups;

        let collapse = terminal_morphism(&samples::z(2));
        assert!(classify_gamma_ab_normal(&collapse).holds);
        assert!(is_normal_extension(&ctx, &collapse).unwrap().holds);

        // The two left zeros land on the same target element, and their
        // kernel is trivial, so the failure is homogeneity itself.
        let fold = Morphism::new(samples::lz2(), samples::b2(), vec![0, 1, 1]).unwrap();
        let verdict = classify_gamma_ab_normal(&fold);
        assert!(!verdict.holds);
        assert!(!is_normal_extension(&ctx, &fold).unwrap().holds);

        let span = product(&samples::z(2), &samples::b2());
        assert!(classify_gamma_ab_normal(&span.right).holds);
        assert!(is_normal_extension(&ctx, &span.right).unwrap().holds);
    }

    #[test]
    fn intrinsic_normality_agrees_with_the_reflector_on_a_sweep() {
        let ctx = ToAbelianGroups;
        let mut seen = 0usize;
        for order_a in 1..=3usize {
            for a in crate::FiniteMonoid::classes_up_to_iso(order_a).iter() {
                for order_b in 1..=order_a {
                    for b in crate::FiniteMonoid::classes_up_to_iso(order_b).iter() {
                        for f in enumerate_surjections(a, b) {
                            let fast = classify_gamma_ab_normal(&f).holds;
                            let slow = is_normal_extension(&ctx, &f).unwrap().holds;
                            assert_eq!(fast, slow, "routes disagree on {f:?}");
                            seen += 1;
                        }
                    }
                }
            }
        }
        assert!(seen > 15, "only {seen} surjections swept");
    }

    #[test]
    fn square_projections_detect_abelian_group_objects() {
        let ab = ToAbelianGroups;
        for m in [
            samples::trivial(),
            samples::z(2),
            samples::z(3),
            samples::b2(),
            samples::n3(),
            samples::direct(&samples::z(2), &samples::b2()),
        ] {
            assert_eq!(
                is_s_special_object(&ab, &m).unwrap(),
                m.is_abelian_object(),
                "disagreement on {}",
                m.label()
            );
        }

        // Over the group context every group qualifies, commutative or not,
        // while the semilattice still fails.
        let gp = ToGroups::default();
        assert!(is_s_special_object(&gp, &samples::z(3)).unwrap());
        assert!(is_s_special_object(&gp, &samples::s3()).unwrap());
        assert!(!is_s_special_object(&gp, &samples::b2()).unwrap());
    }

    #[test]
    fn commuting_embeddings_are_checked_before_the_cooperator_runs() {
        let z2 = samples::z(2);
        let squash = Morphism::new(z2.clone(), z2.clone(), vec![0, 0]).unwrap();
        assert_eq!(
            commutes(&squash, &identity(&z2)),
            Err(EmbeddingError { which: "left" })
        );
        assert_eq!(
            commutes(&identity(&z2), &squash),
            Err(EmbeddingError { which: "right" })
        );

        assert!(commutes(&identity(&z2), &identity(&z2))
            .unwrap()
            .is_some());

        // The left zero pair fails to commute with itself.
        let lz = samples::lz2();
        assert!(commutes(&identity(&lz), &identity(&lz)).unwrap().is_none());
    }
}
