//! Exhaustive enumeration of small algebras and morphisms.
//!
//! Enumerated class lists are deduplicated by a canonical form: the neutral
//! element is relabeled to 0 and the lexicographically least concatenated
//! table over all permutations of the remaining elements is taken. The
//! returned representatives carry that canonical table, so lists are
//! deterministic across runs, and they are cached per order behind a lock
//! because the sweeps request the same orders over and over.
//!
//! Monoid tables are generated by backtracking over the cells not fixed by
//! the identity row and column, with an incremental associativity check: a
//! violating triple is caught at the moment its last needed product is
//! placed. Semirings reuse the commutative monoid representatives as
//! addition tables and backtrack the multiplication over them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{Algebra, FiniteMonoid, FiniteSemiring, Morphism};

const UNSET: usize = usize::MAX;

/// Algebras whose isomorphism classes can be listed by order.
pub trait Enumerable: Algebra {
    /// All isomorphism classes of the given order, canonical and cached.
    fn classes_up_to_iso(order: usize) -> Arc<Vec<Arc<Self>>>;
}

impl Enumerable for FiniteMonoid {
    fn classes_up_to_iso(order: usize) -> Arc<Vec<Arc<Self>>> {
        monoids_up_to_iso(order)
    }
}

impl Enumerable for FiniteSemiring {
    fn classes_up_to_iso(order: usize) -> Arc<Vec<Arc<Self>>> {
        semirings_up_to_iso(order)
    }
}

/// Visits every permutation of `0..n` that sends `pinned` to 0, as a slice
/// `perm` with `perm[old] = new`.
fn for_each_relabeling(n: usize, pinned: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm = vec![UNSET; n];
    perm[pinned] = 0;
    let free: Vec<usize> = (0..n).filter(|&x| x != pinned).collect();
    fn go(free: &[usize], at: usize, used: &mut Vec<bool>, perm: &mut [usize], visit: &mut impl FnMut(&[usize])) {
        if at == free.len() {
            visit(perm);
            return;
        }
        for label in 0..used.len() {
            if !used[label] {
                used[label] = true;
                perm[free[at]] = label + 1;
                go(free, at + 1, used, perm, visit);
                used[label] = false;
            }
        }
    }
    let mut used = vec![false; n - 1];
    go(&free, 0, &mut used, &mut perm, &mut visit);
}

/// Concatenated operation tables after the lexicographically best relabeling
/// that sends the neutral element to 0. Two algebras are isomorphic exactly
/// when their canonical tables agree.
pub fn canonical_tables<A: Algebra>(a: &A) -> Vec<usize> {
    let n = a.size();
    let mut best: Option<Vec<usize>> = None;
    let mut candidate = vec![0usize; A::OP_COUNT * n * n];
    for_each_relabeling(n, a.neutral(), |perm| {
        for which in 0..A::OP_COUNT {
            let off = which * n * n;
            for x in 0..n {
                for y in 0..n {
                    candidate[off + perm[x] * n + perm[y]] = perm[a.op(which, x, y)];
                }
            }
        }
        match &best {
            Some(b) if *b <= candidate => {}
            _ => best = Some(candidate.clone()),
        }
    });
    best.unwrap()
}

/// Backtracks over all monoid tables of the given order with the identity
/// pinned at 0, calling `emit` with each completed flat table.
///
/// The only pruning is the incremental associativity check: after placing
/// `t[x][y]`, exactly the triples in which that cell is one of the four
/// involved products are rechecked.
fn fill_monoid_tables(order: usize, emit: &mut impl FnMut(&[usize])) {
    if order == 0 {
        return;
    }
    let n = order;
    let mut t = vec![UNSET; n * n];
    for j in 0..n {
        t[j] = j;
        t[j * n] = j;
    }
    let cells: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .collect();
    fn placement_ok(t: &[usize], n: usize, x: usize, y: usize) -> bool {
        let v = t[x * n + y];
        // Placed cell is the product a*b of the triple (a, b, c) = (x, y, c).
        for c in 0..n {
            let q1 = t[y * n + c];
            if q1 == UNSET {
                continue;
            }
            let p2 = t[v * n + c];
            let q2 = t[x * n + q1];
            if p2 != UNSET && q2 != UNSET && p2 != q2 {
                return false;
            }
        }
        // Placed cell is the product b*c of the triple (a, b, c) = (a, x, y).
        for a in 0..n {
            let p1 = t[a * n + x];
            if p1 == UNSET {
                continue;
            }
            let p2 = t[p1 * n + y];
            let q2 = t[a * n + v];
            if p2 != UNSET && q2 != UNSET && p2 != q2 {
                return false;
            }
        }
        // Placed cell is the outer product (a*b)*c, so a*b = x and c = y.
        for a in 0..n {
            for b in 0..n {
                if t[a * n + b] == x {
                    let q1 = t[b * n + y];
                    if q1 == UNSET {
                        continue;
                    }
                    let q2 = t[a * n + q1];
                    if q2 != UNSET && q2 != v {
                        return false;
                    }
                }
            }
        }
        // Placed cell is the outer product a*(b*c), so a = x and b*c = y.
        for b in 0..n {
            for c in 0..n {
                if t[b * n + c] == y {
                    let p1 = t[x * n + b];
                    if p1 == UNSET {
                        continue;
                    }
                    let p2 = t[p1 * n + c];
                    if p2 != UNSET && p2 != v {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(
        t: &mut Vec<usize>,
        n: usize,
        cells: &[(usize, usize)],
        at: usize,
        emit: &mut impl FnMut(&[usize]),
    ) {
        if at == cells.len() {
            emit(t);
            return;
        }
        let (x, y) = cells[at];
        for v in 0..n {
            t[x * n + y] = v;
            if placement_ok(t, n, x, y) {
                go(t, n, cells, at + 1, emit);
            }
        }
        t[x * n + y] = UNSET;
    }
    go(&mut t, n, &cells, 0, emit);
}

static MONOID_CLASSES: OnceLock<Mutex<HashMap<usize, Arc<Vec<Arc<FiniteMonoid>>>>>> =
    OnceLock::new();

/// All isomorphism classes of monoids of the given order.
///
/// Representatives carry their canonical table, are sorted by it, and are
/// named `mon{order}.{index}`. The full list per order is cached.
pub fn monoids_up_to_iso(order: usize) -> Arc<Vec<Arc<FiniteMonoid>>> {
    let lock = MONOID_CLASSES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = lock.lock().unwrap();
    if let Some(hit) = cache.get(&order) {
        return hit.clone();
    }
    let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
    fill_monoid_tables(order, &mut |t| {
        let m = FiniteMonoid::from_tables_trusted(order, 0, vec![t.to_vec()]);
        canon.insert(canonical_tables(&m));
    });
    let list: Vec<Arc<FiniteMonoid>> = canon
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            Arc::new(
                FiniteMonoid::from_tables_trusted(order, 0, vec![t])
                    .named(format!("mon{order}.{i:02}")),
            )
        })
        .collect();
    let shared = Arc::new(list);
    cache.insert(order, shared.clone());
    shared
}

/// Isomorphism classes of commutative monoids of the given order.
pub fn commutative_monoids_up_to_iso(order: usize) -> Vec<Arc<FiniteMonoid>> {
    monoids_up_to_iso(order)
        .iter()
        .filter(|m| m.is_commutative())
        .cloned()
        .collect()
}

/// Isomorphism classes of monoids of every order from 1 to the bound,
/// concatenated in order of size.
pub fn monoids_through_order(max_order: usize) -> Vec<Arc<FiniteMonoid>> {
    (1..=max_order)
        .flat_map(|k| monoids_up_to_iso(k).iter().cloned().collect::<Vec<_>>())
        .collect()
}

/// Backtracks multiplication tables over a fixed addition table, enforcing
/// absorption up front and associativity plus distributivity incrementally.
fn fill_mul_tables(add: &FiniteMonoid, emit: &mut impl FnMut(&[usize])) {
    let n = add.size();
    let zero = add.identity();
    let mut t = vec![UNSET; n * n];
    for j in 0..n {
        t[zero * n + j] = zero;
        t[j * n + zero] = zero;
    }
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != zero && j != zero)
        .collect();
    // Distributivity of a placed product over every addition whose operands
    // or result touch it. Scans are quadratic in the order, which the small
    // semiring orders in use keep cheap.
    fn distributivity_ok(t: &[usize], add: &FiniteMonoid, x: usize, y: usize) -> bool {
        let n = add.size();
        let v = t[x * n + y];
        for b in 0..n {
            for c in 0..n {
                // Left law at (x, b, c): placed cell can be x*(b+c), x*b or x*c.
                if add.mul(b, c) == y {
                    let ab = t[x * n + b];
                    let ac = t[x * n + c];
                    if ab != UNSET && ac != UNSET && add.mul(ab, ac) != v {
                        return false;
                    }
                }
                if b == y {
                    let whole = t[x * n + add.mul(y, c)];
                    let other = t[x * n + c];
                    if whole != UNSET && other != UNSET && add.mul(v, other) != whole {
                        return false;
                    }
                }
                // Right law at (b, c, y): placed cell can be (b+c)*y, b*y or c*y.
                if add.mul(b, c) == x {
                    let by = t[b * n + y];
                    let cy = t[c * n + y];
                    if by != UNSET && cy != UNSET && add.mul(by, cy) != v {
                        return false;
                    }
                }
                if b == x {
                    let whole = t[add.mul(x, c) * n + y];
                    let other = t[c * n + y];
                    if whole != UNSET && other != UNSET && add.mul(v, other) != whole {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn assoc_ok(t: &[usize], n: usize, x: usize, y: usize) -> bool {
        let v = t[x * n + y];
        for c in 0..n {
            let q1 = t[y * n + c];
            if q1 == UNSET {
                continue;
            }
            let p2 = t[v * n + c];
            let q2 = t[x * n + q1];
            if p2 != UNSET && q2 != UNSET && p2 != q2 {
                return false;
            }
        }
        for a in 0..n {
            let p1 = t[a * n + x];
            if p1 == UNSET {
                continue;
            }
            let p2 = t[p1 * n + y];
            let q2 = t[a * n + v];
            if p2 != UNSET && q2 != UNSET && p2 != q2 {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if t[a * n + b] == x {
                    let q1 = t[b * n + y];
                    if q1 == UNSET {
                        continue;
                    }
                    let q2 = t[a * n + q1];
                    if q2 != UNSET && q2 != v {
                        return false;
                    }
                }
            }
        }
        for b in 0..n {
            for c in 0..n {
                if t[b * n + c] == y {
                    let p1 = t[x * n + b];
                    if p1 == UNSET {
                        continue;
                    }
                    let p2 = t[p1 * n + c];
                    if p2 != UNSET && p2 != v {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(
        t: &mut Vec<usize>,
        add: &FiniteMonoid,
        cells: &[(usize, usize)],
        at: usize,
        emit: &mut impl FnMut(&[usize]),
    ) {
        if at == cells.len() {
            emit(t);
            return;
        }
        let n = add.size();
        let (x, y) = cells[at];
        for v in 0..n {
            t[x * n + y] = v;
            if assoc_ok(t, n, x, y) && distributivity_ok(t, add, x, y) {
                go(t, add, cells, at + 1, emit);
            }
        }
        t[x * n + y] = UNSET;
    }
    go(&mut t, add, &cells, 0, emit);
}

static SEMIRING_CLASSES: OnceLock<Mutex<HashMap<usize, Arc<Vec<Arc<FiniteSemiring>>>>>> =
    OnceLock::new();

/// All isomorphism classes of semirings of the given order.
///
/// Additions range over the canonical commutative monoid representatives.
/// Two semirings sharing that addition table are isomorphic exactly when an
/// additive automorphism transports one multiplication to the other, so the
/// multiplication is reduced to its least table under the automorphism
/// group of the addition.
pub fn semirings_up_to_iso(order: usize) -> Arc<Vec<Arc<FiniteSemiring>>> {
    let lock = SEMIRING_CLASSES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut cache = lock.lock().unwrap();
    if let Some(hit) = cache.get(&order) {
        return hit.clone();
    }
    let n = order;
    let mut keyed: BTreeMap<(Vec<usize>, Vec<usize>), ()> = BTreeMap::new();
    for add in commutative_monoids_up_to_iso(order) {
        let auts: Vec<Vec<usize>> = automorphisms(&add)
            .into_iter()
            .map(|m| m.map().to_vec())
            .collect();
        fill_mul_tables(&add, &mut |mul| {
            let mut least = mul.to_vec();
            let mut relabeled = vec![0usize; n * n];
            for perm in &auts {
                for x in 0..n {
                    for y in 0..n {
                        relabeled[perm[x] * n + perm[y]] = perm[mul[x * n + y]];
                    }
                }
                if relabeled < least {
                    least.copy_from_slice(&relabeled);
                }
            }
            keyed.insert((add.table(0).to_vec(), least), ());
        });
    }
    let list: Vec<Arc<FiniteSemiring>> = keyed
        .into_keys()
        .enumerate()
        .map(|(i, (add, mul))| {
            let mut s = FiniteSemiring::from_tables_trusted(order, 0, vec![add, mul]);
            s.set_name(format!("srng{order}.{i:02}"));
            Arc::new(s)
        })
        .collect();
    let shared = Arc::new(list);
    cache.insert(order, shared.clone());
    shared
}

/// All homomorphisms from `a` to `b` whose value at each element lies in
/// `candidates(element)`.
fn homs_with<A: Algebra>(
    a: &Arc<A>,
    b: &Arc<A>,
    candidates: &dyn Fn(usize) -> Vec<usize>,
) -> Vec<Morphism<A>> {
    let n = a.size();
    let mut map = vec![UNSET; n];
    let mut out = Vec::new();
    // After assigning element k, exactly the operation constraints whose
    // three participants all lie in 0..=k and include k are new.
    fn consistent<A: Algebra>(a: &A, b: &A, map: &[usize], k: usize) -> bool {
        for which in 0..A::OP_COUNT {
            for x in 0..=k {
                for y in 0..=k {
                    let p = a.op(which, x, y);
                    if p > k {
                        continue;
                    }
                    if x < k && y < k && p < k {
                        continue;
                    }
                    if b.op(which, map[x], map[y]) != map[p] {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go<A: Algebra>(
        a: &Arc<A>,
        b: &Arc<A>,
        candidates: &dyn Fn(usize) -> Vec<usize>,
        map: &mut Vec<usize>,
        k: usize,
        out: &mut Vec<Morphism<A>>,
    ) {
        if k == a.size() {
            out.push(Morphism::new_unchecked(a.clone(), b.clone(), map.clone()));
            return;
        }
        let options = if k == a.neutral() {
            vec![b.neutral()]
        } else {
            candidates(k)
        };
        for v in options {
            if k == a.neutral() && v != b.neutral() {
                continue;
            }
            map[k] = v;
            if consistent(a.as_ref(), b.as_ref(), map, k) {
                go(a, b, candidates, map, k + 1, out);
            }
        }
        map[k] = UNSET;
    }
    go(a, b, candidates, &mut map, 0, &mut out);
    out
}

/// All homomorphisms from `a` to `b`.
pub fn enumerate_homs<A: Algebra>(a: &Arc<A>, b: &Arc<A>) -> Vec<Morphism<A>> {
    let all: Vec<usize> = b.elements().collect();
    homs_with(a, b, &|_| all.clone())
}

/// All surjective homomorphisms from `a` to `b`.
pub fn enumerate_surjections<A: Algebra>(a: &Arc<A>, b: &Arc<A>) -> Vec<Morphism<A>> {
    enumerate_homs(a, b)
        .into_iter()
        .filter(Morphism::is_surjective)
        .collect()
}

/// All homomorphic sections of `f`: morphisms `s` from the target back into
/// the source with `f(s(b)) = b` everywhere.
pub fn sections_of<A: Algebra>(f: &Morphism<A>) -> Vec<Morphism<A>> {
    let fibers: Vec<Vec<usize>> = {
        let mut fibers = vec![Vec::new(); f.target().size()];
        for a in f.source().elements() {
            fibers[f.apply(a)].push(a);
        }
        fibers
    };
    homs_with(f.target(), f.source(), &|b| fibers[b].clone())
}

/// All automorphisms of `a`.
pub fn automorphisms<A: Algebra>(a: &Arc<A>) -> Vec<Morphism<A>> {
    enumerate_homs(a, a)
        .into_iter()
        .filter(Morphism::is_bijective)
        .collect()
}

/// One representative per isomorphism class of abelian groups of the given
/// order: the products of cyclic groups along each invariant factor chain.
pub fn abelian_group_classes(order: usize) -> Vec<Arc<FiniteMonoid>> {
    assert!(order >= 1);
    let mut chains = Vec::new();
    fn go(rem: usize, prev: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 1 {
            out.push(cur.clone());
            return;
        }
        let mut d = prev.max(2);
        while d <= rem {
            if rem % d == 0 && d % prev == 0 {
                cur.push(d);
                go(rem / d, d, cur, out);
                cur.pop();
            }
            d += 1;
        }
    }
    go(order, 1, &mut Vec::new(), &mut chains);
    chains
        .into_iter()
        .map(|chain| {
            // The empty chain is the trivial group of order 1.
            let mut acc = crate::samples::z(1);
            let mut name = String::new();
            for &d in &chain {
                if name.is_empty() {
                    acc = crate::samples::z(d);
                } else {
                    acc = crate::construct::product(&acc, &crate::samples::z(d)).apex;
                }
                name.push_str(&format!("{}Z{d}", if name.is_empty() { "" } else { "x" }));
            }
            if name.is_empty() {
                name.push_str("Z1");
            }
            Arc::new(acc.as_ref().clone().named(name))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::are_isomorphic;
    use crate::samples;

    #[test]
    fn monoid_class_counts_match_the_known_sequence() {
        let counts: Vec<usize> = (1..=5).map(|k| monoids_up_to_iso(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 35, 228]);
    }

    #[test]
    fn commutative_monoid_class_counts() {
        let counts: Vec<usize> = (1..=4)
            .map(|k| commutative_monoids_up_to_iso(k).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 19]);
    }

    #[test]
    fn order_three_classes_agree_with_a_brute_force_bucketing() {
        // Independent path: scan all 3^9 tables, keep the ones that are
        // monoids under any placement of the identity, and bucket by
        // canonical table.
        let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
        let n = 3usize;
        for code in 0..3usize.pow(9) {
            let mut t = vec![0usize; 9];
            let mut c = code;
            for cell in t.iter_mut() {
                *cell = c % n;
                c /= n;
            }
            for e in 0..n {
                if let Ok(m) = FiniteMonoid::new(n, e, t.clone()) {
                    canon.insert(canonical_tables(&m));
                    break;
                }
            }
        }
        let listed = monoids_up_to_iso(3);
        assert_eq!(canon.len(), listed.len());
        for m in listed.iter() {
            assert!(canon.contains(&canonical_tables(m.as_ref())));
        }
    }

    #[test]
    fn canonical_tables_decide_isomorphism() {
        let relabeled =
            FiniteMonoid::new(3, 0, vec![0, 1, 2, 1, 1, 1, 2, 1, 1]).unwrap();
        assert_eq!(
            canonical_tables(samples::n3().as_ref()),
            canonical_tables(&relabeled)
        );
        assert_ne!(
            canonical_tables(samples::n3().as_ref()),
            canonical_tables(samples::z(3).as_ref())
        );
    }

    #[test]
    fn enumerated_representatives_are_pairwise_nonisomorphic() {
        let classes = monoids_up_to_iso(4);
        for (i, a) in classes.iter().enumerate() {
            for b in classes.iter().skip(i + 1) {
                assert!(are_isomorphic(a, b).is_none());
            }
        }
    }

    #[test]
    fn semiring_classes_of_order_two() {
        // By hand: additions are the cyclic group and the join semilattice;
        // over each, the multiplication is zero or keeps 1 idempotent,
        // giving the zero rings, the two element field and the boolean rig.
        let classes = semirings_up_to_iso(2);
        assert_eq!(classes.len(), 4);
        assert!(classes
            .iter()
            .any(|s| are_isomorphic(s, &samples::f2()).is_some()));
        assert!(classes
            .iter()
            .any(|s| are_isomorphic(s, &samples::bool_rig()).is_some()));
    }

    #[test]
    fn semiring_dedup_agrees_with_pairwise_isomorphism() {
        let classes = semirings_up_to_iso(3);
        for (i, a) in classes.iter().enumerate() {
            for b in classes.iter().skip(i + 1) {
                assert!(are_isomorphic(a, b).is_none());
            }
        }
    }

    #[test]
    fn hom_enumeration_matches_hand_counts() {
        assert_eq!(enumerate_homs(&samples::z(2), &samples::z(2)).len(), 2);
        assert_eq!(enumerate_homs(&samples::z(4), &samples::z(2)).len(), 2);
        assert_eq!(enumerate_homs(&samples::n3(), &samples::b2()).len(), 2);
        // Surjections from the four element cyclic group onto the two
        // element one: only reduction mod two.
        assert_eq!(enumerate_surjections(&samples::z(4), &samples::z(2)).len(), 1);
    }

    #[test]
    fn sections_are_fiberwise_and_homomorphic() {
        let f = Morphism::new(samples::n3(), samples::b2(), vec![0, 1, 1]).unwrap();
        let sections = sections_of(&f);
        // The top element is the only idempotent over 1.
        assert_eq!(sections.len(), 1);
        assert_eq!(sections[0].map(), &[0, 2]);
    }

    #[test]
    fn automorphism_groups_of_small_samples() {
        assert_eq!(automorphisms(&samples::z(3)).len(), 2);
        assert_eq!(automorphisms(&samples::n3()).len(), 1);
        assert_eq!(automorphisms(&samples::s3()).len(), 6);
    }

    #[test]
    fn abelian_group_classes_follow_invariant_factor_chains() {
        assert_eq!(abelian_group_classes(1).len(), 1);
        assert_eq!(abelian_group_classes(8).len(), 3);
        let twelve = abelian_group_classes(12);
        assert_eq!(twelve.len(), 2);
        for g in &twelve {
            assert_eq!(g.size(), 12);
            assert!(g.is_abelian_object());
        }
        assert!(are_isomorphic(&twelve[0], &twelve[1]).is_none());
    }
}
