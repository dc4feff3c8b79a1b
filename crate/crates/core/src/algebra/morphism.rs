use std::sync::Arc;

use super::Algebra;
use crate::error::{MorphismError, PointError};

/// A homomorphism between finite algebras of the same signature.
///
/// Holds shared handles to its endpoints so that derived constructions can
/// pass morphisms around without copying tables. Equality is structural on
/// endpoints and the underlying map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism<A: Algebra> {
    source: Arc<A>,
    target: Arc<A>,
    map: Vec<usize>,
}

impl<A: Algebra> Morphism<A> {
    /// Validates the homomorphism conditions and builds the morphism.
    ///
    /// Check order: map length, image range, neutral preservation, operation
    /// preservation (operations in signature order, argument pairs in
    /// lexicographic order). First failure wins.
    pub fn new(source: Arc<A>, target: Arc<A>, map: Vec<usize>) -> Result<Self, MorphismError> {
        check_hom(&*source, &*target, &map)?;
        Ok(Morphism {
            source,
            target,
            map,
        })
    }

    /// Construction backdoor for maps that are homomorphisms by construction.
    pub(crate) fn new_unchecked(source: Arc<A>, target: Arc<A>, map: Vec<usize>) -> Self {
        debug_assert!(
            source.size() > 32 || check_hom(&*source, &*target, &map).is_ok(),
            "trusted map is not a homomorphism"
        );
        Morphism {
            source,
            target,
            map,
        }
    }

    pub fn source(&self) -> &Arc<A> {
        &self.source
    }

    pub fn target(&self) -> &Arc<A> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && self.is_injective()
    }

    /// The first element of the target not hit by the map, if any.
    pub fn first_missed(&self) -> Option<usize> {
        let mut hit = vec![false; self.target.size()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().position(|h| !h)
    }
}

/// Validates that `map` is a homomorphism from `source` to `target`.
pub fn validate_morphism<A: Algebra>(
    source: &A,
    target: &A,
    map: &[usize],
) -> Result<(), MorphismError> {
    check_hom(source, target, map)
}

fn check_hom<A: Algebra>(source: &A, target: &A, map: &[usize]) -> Result<(), MorphismError> {
    if map.len() != source.size() {
        return Err(MorphismError::MapLengthMismatch {
            expected: source.size(),
            got: map.len(),
        });
    }
    for (at, &value) in map.iter().enumerate() {
        if value >= target.size() {
            return Err(MorphismError::ImageOutOfRange {
                at,
                value,
                size: target.size(),
            });
        }
    }
    if map[source.neutral()] != target.neutral() {
        return Err(MorphismError::NeutralNotPreserved {
            got: map[source.neutral()],
            expected: target.neutral(),
        });
    }
    for which in 0..A::OP_COUNT {
        for a in source.elements() {
            for b in source.elements() {
                let lhs = map[source.op(which, a, b)];
                let rhs = target.op(which, map[a], map[b]);
                if lhs != rhs {
                    return Err(MorphismError::OpNotPreserved {
                        op: A::OP_LABELS[which],
                        a,
                        b,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(())
}

/// The identity morphism on an algebra.
pub fn identity<A: Algebra>(object: &Arc<A>) -> Morphism<A> {
    Morphism::new_unchecked(
        object.clone(),
        object.clone(),
        (0..object.size()).collect(),
    )
}

/// Composite `g` after `f`. Panics when the endpoints do not line up; the
/// callers of this function compose arrows they constructed themselves.
pub fn compose<A: Algebra>(g: &Morphism<A>, f: &Morphism<A>) -> Morphism<A> {
    assert_eq!(
        f.target(),
        g.source(),
        "composition endpoint mismatch"
    );
    let map = f.map().iter().map(|&a| g.apply(a)).collect();
    Morphism::new_unchecked(f.source.clone(), g.target.clone(), map)
}

/// The subalgebra on a closed subset, with its embedding.
///
/// `elems` must be sorted, duplicate-free, contain the neutral element and be
/// closed under every operation; the construction panics otherwise, since
/// callers only pass closed subsets (kernels, images, pullback carriers).
pub(crate) fn subalgebra<A: Algebra>(ambient: &Arc<A>, elems: &[usize]) -> (Arc<A>, Morphism<A>) {
    let n = elems.len();
    let mut index_of = vec![usize::MAX; ambient.size()];
    for (i, &e) in elems.iter().enumerate() {
        index_of[e] = i;
    }
    let mut member = vec![false; ambient.size()];
    for &e in elems {
        member[e] = true;
    }
    assert!(
        super::closure_failure(&**ambient, &member).is_none(),
        "subset is not closed under the operations"
    );
    let mut tables = Vec::with_capacity(A::OP_COUNT);
    for which in 0..A::OP_COUNT {
        let mut t = vec![0usize; n * n];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                t[i * n + j] = index_of[ambient.op(which, a, b)];
            }
        }
        tables.push(t);
    }
    let sub = Arc::new(A::from_tables_trusted(
        n,
        index_of[ambient.neutral()],
        tables,
    ));
    let embed = Morphism::new_unchecked(sub.clone(), ambient.clone(), elems.to_vec());
    (sub, embed)
}

/// The kernel of a morphism: the subalgebra on the preimage of the target's
/// neutral element, together with its embedding into the source.
pub fn kernel<A: Algebra>(f: &Morphism<A>) -> (Arc<A>, Morphism<A>) {
    let neutral = f.target().neutral();
    let elems: Vec<usize> = f
        .source()
        .elements()
        .filter(|&a| f.apply(a) == neutral)
        .collect();
    subalgebra(f.source(), &elems)
}

/// A split epimorphism with a chosen section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point<A: Algebra> {
    epi: Morphism<A>,
    section: Morphism<A>,
}

impl<A: Algebra> Point<A> {
    /// Checks that `section` really splits `epi` (which then is surjective).
    pub fn new(epi: Morphism<A>, section: Morphism<A>) -> Result<Self, PointError> {
        if epi.source() != section.target() || epi.target() != section.source() {
            return Err(PointError::EndpointMismatch);
        }
        for b in epi.target().elements() {
            let got = epi.apply(section.apply(b));
            if got != b {
                return Err(PointError::NotASection { at: b, got });
            }
        }
        Ok(Point { epi, section })
    }

    pub fn epi(&self) -> &Morphism<A> {
        &self.epi
    }

    pub fn section(&self) -> &Morphism<A> {
        &self.section
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteMonoid;

    fn join2() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::new(2, 0, vec![0, 1, 1, 1]).unwrap())
    }

    fn sat3() -> Arc<FiniteMonoid> {
        // Addition on {0,1,2} saturating at 2.
        Arc::new(
            FiniteMonoid::new(3, 0, vec![0, 1, 2, 1, 2, 2, 2, 2, 2]).unwrap(),
        )
    }

    #[test]
    fn saturation_height_is_a_morphism() {
        let f = Morphism::new(sat3(), join2(), vec![0, 1, 1]).unwrap();
        assert!(f.is_surjective());
        assert!(!f.is_injective());
    }

    #[test]
    fn non_homomorphism_reports_first_bad_pair() {
        // 1+1 = 2 maps to 1, but 1 or 1 = 1 maps from images 1, 1... use the
        // map sending 2 to 0: then image of 1+1 is 0 while 1 or 1 is 1.
        let err = Morphism::new(sat3(), join2(), vec![0, 1, 0]).unwrap_err();
        assert_eq!(
            err,
            MorphismError::OpNotPreserved {
                op: crate::error::OpLabel::Mul,
                a: 1,
                b: 1,
                lhs: 0,
                rhs: 1,
            }
        );
    }

    #[test]
    fn kernel_of_height_map_is_the_bottom() {
        let f = Morphism::new(sat3(), join2(), vec![0, 1, 1]).unwrap();
        let (k, embed) = kernel(&f);
        assert_eq!(k.size(), 1);
        assert_eq!(embed.map(), &[0]);
    }

    #[test]
    fn composition_applies_left_to_right() {
        let f = Morphism::new(sat3(), join2(), vec![0, 1, 1]).unwrap();
        let collapse = Morphism::new(join2(), join2().clone(), vec![0, 1]).unwrap();
        let g = compose(&collapse, &f);
        assert_eq!(g.map(), &[0, 1, 1]);
        assert_eq!(g, f);
    }

    #[test]
    fn section_condition_is_checked_pointwise() {
        let f = Morphism::new(sat3(), join2(), vec![0, 1, 1]).unwrap();
        // 0 -> 0, 1 -> 2 is a section: f(2) = 1. It is also a morphism:
        // s(1 or 1) = s(1) = 2 = 2 sat+ 2.
        let s = Morphism::new(join2(), sat3(), vec![0, 2]).unwrap();
        let p = Point::new(f.clone(), s).unwrap();
        assert_eq!(p.epi().apply(p.section().apply(1)), 1);
        // The identity-ish map 0 -> 0, 1 -> 0 is a morphism but no section.
        let bad = Morphism::new(join2(), sat3(), vec![0, 0]).unwrap();
        assert_eq!(
            Point::new(f, bad).unwrap_err(),
            PointError::NotASection { at: 1, got: 0 }
        );
    }

    #[test]
    fn identity_is_neutral_for_composition() {
        let f = Morphism::new(sat3(), join2(), vec![0, 1, 1]).unwrap();
        assert_eq!(compose(&identity(&join2()), &f), f);
        assert_eq!(compose(&f, &identity(&sat3())), f);
    }
}
