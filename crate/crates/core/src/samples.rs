//! Small named algebras used in tests, docs and the survey examples.
//!
//! Carriers are `0..n`; the comment on each constructor fixes the intended
//! reading of the indices.

use std::sync::Arc;

use crate::algebra::{FiniteMonoid, FiniteSemiring};
use crate::construct::product;

/// The one-element monoid.
pub fn trivial() -> Arc<FiniteMonoid> {
    Arc::new(FiniteMonoid::new(1, 0, vec![0]).unwrap().named("1"))
}

/// The cyclic group of order `n`, addition modulo `n`.
pub fn z(n: usize) -> Arc<FiniteMonoid> {
    assert!(n >= 1);
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = (a + b) % n;
        }
    }
    Arc::new(FiniteMonoid::new(n, 0, table).unwrap().named(format!("Z{n}")))
}

/// The join semilattice on {0, 1}: identity 0, absorbing 1.
pub fn b2() -> Arc<FiniteMonoid> {
    Arc::new(FiniteMonoid::new(2, 0, vec![0, 1, 1, 1]).unwrap().named("B2"))
}

/// Addition on {0, 1, 2} saturating at 2.
pub fn n3() -> Arc<FiniteMonoid> {
    Arc::new(truncated_cyclic(2, 1).named("N3"))
}

/// {e, a, z} with a*a = z and z absorbing; indices e=0, a=1, z=2.
pub fn k3() -> Arc<FiniteMonoid> {
    Arc::new(
        FiniteMonoid::new(3, 0, vec![0, 1, 2, 1, 2, 2, 2, 2, 2])
            .unwrap()
            .named("K3"),
    )
}

/// {e, a, b} with a and b left-absorbing on everything but e; e=0, a=1, b=2.
pub fn lz2() -> Arc<FiniteMonoid> {
    Arc::new(
        FiniteMonoid::new(3, 0, vec![0, 1, 2, 1, 1, 1, 2, 2, 2])
            .unwrap()
            .named("LZ2"),
    )
}

/// The symmetric group on three letters; index 0 is the identity.
pub fn s3() -> Arc<FiniteMonoid> {
    // Elements: 0 = e, 1 = (12), 2 = (13), 3 = (23), 4 = (123), 5 = (132),
    // composed left to right as functions applied on the right.
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
        [q[p[0]], q[p[1]], q[p[2]]]
    };
    let mut table = vec![0usize; 36];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let r = compose(p, q);
            table[i * 6 + j] = perms.iter().position(|x| *x == r).unwrap();
        }
    }
    Arc::new(FiniteMonoid::new(6, 0, table).unwrap().named("S3"))
}

/// The monoid generated by one element with a^(index+period) = a^index:
/// carrier {a^0, ..., a^(index+period-1)}, size index + period.
pub fn truncated_cyclic(index: usize, period: usize) -> FiniteMonoid {
    assert!(period >= 1);
    let n = index + period;
    let reduce = |k: usize| {
        if k < n {
            k
        } else {
            index + (k - index) % period
        }
    };
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = reduce(a + b);
        }
    }
    FiniteMonoid::new(n, 0, table)
        .unwrap()
        .named(format!("C{index}p{period}"))
}

/// The direct product of two sample monoids, named after its factors.
pub fn direct(a: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> Arc<FiniteMonoid> {
    let span = product(a, b);
    let name = format!("{}x{}", a.label(), b.label());
    let mut m = (*span.apex).clone();
    m.set_name(name);
    Arc::new(m)
}

/// The two-element rig of truth values: join addition, meet multiplication.
pub fn bool_rig() -> Arc<FiniteSemiring> {
    Arc::new(FiniteSemiring::new(2, 0, vec![0, 1, 1, 1], vec![0, 0, 0, 1]).unwrap())
}

/// The field with two elements, viewed as a semiring.
pub fn f2() -> Arc<FiniteSemiring> {
    Arc::new(FiniteSemiring::new(2, 0, vec![0, 1, 1, 0], vec![0, 0, 0, 1]).unwrap())
}

/// Saturating arithmetic on {0, 1, 2}: truncated addition and truncated
/// multiplication. Not a ring; the additive monoid is `n3`.
pub fn sat_rig3() -> Arc<FiniteSemiring> {
    let cap = |k: usize| k.min(2);
    let mut add = vec![0usize; 9];
    let mut mul = vec![0usize; 9];
    for a in 0..3 {
        for b in 0..3 {
            add[a * 3 + b] = cap(a + b);
            mul[a * 3 + b] = cap(a * b);
        }
    }
    Arc::new(FiniteSemiring::new(3, 0, add, mul).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn n3_and_k3_share_a_table_under_their_labels() {
        // Both are the truncated cyclic monoid of index 1... index 2 with
        // period 1: a^3 = a^2. Distinct names, identical structure.
        assert_eq!(*n3().table(0), *k3().table(0));
    }

    #[test]
    fn s3_is_a_noncommutative_group() {
        let g = s3();
        assert!(g.is_group());
        assert!(!g.is_commutative());
    }

    #[test]
    fn truncated_cyclic_reduces_high_powers_into_the_cycle() {
        let c = truncated_cyclic(2, 3); // a^5 = a^2, size 5
        assert_eq!(c.size(), 5);
        // a^4 * a^3 = a^7 = a^(2 + (7-2) mod 3)= a^4.
        assert_eq!(c.mul(4, 3), 4);
    }

    #[test]
    fn sample_groups_are_abelian_objects() {
        assert!(z(4).is_abelian_object());
        assert!(!b2().is_abelian_object());
    }
}
