use std::sync::Arc;

use super::{Algebra, Morphism};

/// Searches for an isomorphism and returns it as a morphism witness.
///
/// Backtracking over neutral-preserving bijections, extending element by
/// element and rejecting as soon as a determined operation value disagrees.
/// Candidate images are pre-filtered by cheap local profiles (idempotency,
/// diagonal behavior, row and column multisets).
pub fn are_isomorphic<A: Algebra>(a: &Arc<A>, b: &Arc<A>) -> Option<Morphism<A>> {
    let map = iso_map(&**a, &**b)?;
    Some(Morphism::new_unchecked(a.clone(), b.clone(), map))
}

/// Raw isomorphism search on bare algebras.
pub(crate) fn iso_map<A: Algebra>(a: &A, b: &A) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let pa = profiles(a);
    let pb = profiles(b);
    {
        // An isomorphism matches profiles, so their multisets must agree.
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.neutral()] = b.neutral();
    used[b.neutral()] = true;
    // Assignment order: all elements except the neutral, ascending.
    let order: Vec<usize> = a.elements().filter(|&x| x != a.neutral()).collect();
    fn extend<A: Algebra>(
        a: &A,
        b: &A,
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
        pa: &[u64],
        pb: &[u64],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in b.elements() {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map, x) && extend(a, b, order, depth + 1, map, used, pa, pb) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
    if extend(a, b, &order, 0, &mut map, &mut used, &pa, &pb) {
        Some(map)
    } else {
        None
    }
}

/// Checks every operation pair whose arguments and result images are all
/// determined and which involves the freshly assigned element.
fn consistent<A: Algebra>(a: &A, b: &A, map: &[usize], fresh: usize) -> bool {
    let assigned: Vec<usize> = a.elements().filter(|&x| map[x] != usize::MAX).collect();
    for which in 0..A::OP_COUNT {
        for &u in &assigned {
            for &v in &assigned {
                if u != fresh && v != fresh {
                    continue;
                }
                let r = a.op(which, u, v);
                if map[r] == usize::MAX {
                    continue;
                }
                if b.op(which, map[u], map[v]) != map[r] {
                    return false;
                }
            }
        }
        // Pairs whose result is the fresh element, freshly determined.
        for &u in &assigned {
            for &v in &assigned {
                if a.op(which, u, v) == fresh && b.op(which, map[u], map[v]) != map[fresh] {
                    return false;
                }
            }
        }
    }
    true
}

/// Cheap isomorphism-invariant fingerprint of an element.
fn profiles<A: Algebra>(a: &A) -> Vec<u64> {
    let n = a.size();
    (0..n)
        .map(|x| {
            let mut h: u64 = 0;
            for which in 0..A::OP_COUNT {
                let idem = (a.op(which, x, x) == x) as u64;
                let neutral_sq = (a.op(which, x, x) == a.neutral()) as u64;
                // Multiset shapes of the row and column through x.
                let mut row = vec![0u32; n];
                let mut col = vec![0u32; n];
                for y in 0..n {
                    row[a.op(which, x, y)] += 1;
                    col[a.op(which, y, x)] += 1;
                }
                row.sort_unstable();
                col.sort_unstable();
                let mut rh: u64 = 0;
                for (v, c) in row.iter().chain(col.iter()).enumerate() {
                    rh = rh
                        .wrapping_mul(1099511628211)
                        .wrapping_add((*c as u64) << (v % 17));
                }
                h = h
                    .wrapping_mul(31)
                    .wrapping_add(idem | (neutral_sq << 1))
                    .wrapping_mul(131)
                    .wrapping_add(rh);
            }
            h
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteMonoid;

    fn mon(size: usize, identity: usize, table: Vec<usize>) -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::new(size, identity, table).unwrap())
    }

    #[test]
    fn relabeled_tables_are_isomorphic() {
        // Saturating addition on {0,1,2} and the same monoid with 1 and 2
        // swapped (identity stays at 0).
        let a = mon(3, 0, vec![0, 1, 2, 1, 2, 2, 2, 2, 2]);
        let b = mon(3, 0, vec![0, 1, 2, 1, 1, 1, 2, 1, 1]);
        let w = are_isomorphic(&a, &b).expect("isomorphic");
        assert!(w.is_bijective());
        assert_eq!(w.apply(a.identity()), b.identity());
    }

    #[test]
    fn group_and_semilattice_of_equal_size_are_not_isomorphic() {
        let z2 = mon(2, 0, vec![0, 1, 1, 0]);
        let join = mon(2, 0, vec![0, 1, 1, 1]);
        assert!(are_isomorphic(&z2, &join).is_none());
    }

    #[test]
    fn witness_is_a_genuine_homomorphism() {
        // Identity at different indices.
        let a = mon(2, 0, vec![0, 1, 1, 1]);
        let b = mon(2, 1, vec![0, 0, 0, 1]);
        let w = are_isomorphic(&a, &b).expect("isomorphic");
        crate::algebra::validate_morphism(&*a, &*b, w.map()).unwrap();
    }

    #[test]
    fn size_mismatch_is_rejected_outright() {
        let a = mon(2, 0, vec![0, 1, 1, 0]);
        let b = mon(1, 0, vec![0]);
        assert!(are_isomorphic(&a, &b).is_none());
    }
}
