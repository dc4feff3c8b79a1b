//! Finite limits, congruences and quotients.
//!
//! # Key types
//!
//! - [`SpanObject`]: an apex with two legs, the common shape of products,
//!   pullbacks and kernel pairs. Apex carriers are pair lists; the legs are
//!   the projections.
//! - [`Congruence`]: a partition of a carrier compatible with the operations,
//!   stored as canonical class ids (classes numbered by least member, so two
//!   equal partitions have identical representations).
//! - [`Coequalizer`]: quotient data of a parallel pair.
//!
//! # Conventions
//!
//! - Product apex element `a * |B| + b` is the pair `(a, b)`.
//! - Pullback carriers list the matching pairs in lexicographic order.
//! - Quotient carriers are class ids; the class representative is its least
//!   member, and the quotient tables are computed on representatives (the
//!   congruence property makes any choice agree).

use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::Arc;

use crate::algebra::{subalgebra, Algebra, Morphism};
use thiserror::Error;

/// An apex with two projection legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanObject<A: Algebra> {
    pub apex: Arc<A>,
    pub left: Morphism<A>,
    pub right: Morphism<A>,
}

/// The direct product with its projections.
pub fn product<A: Algebra>(a: &Arc<A>, b: &Arc<A>) -> SpanObject<A> {
    let (n, m) = (a.size(), b.size());
    let size = n * m;
    let mut tables = Vec::with_capacity(A::OP_COUNT);
    for which in 0..A::OP_COUNT {
        let mut t = vec![0usize; size * size];
        for x in 0..size {
            let (xa, xb) = (x / m, x % m);
            for y in 0..size {
                let (ya, yb) = (y / m, y % m);
                t[x * size + y] = a.op(which, xa, ya) * m + b.op(which, xb, yb);
            }
        }
        tables.push(t);
    }
    let apex = Arc::new(A::from_tables_trusted(
        size,
        a.neutral() * m + b.neutral(),
        tables,
    ));
    let left = Morphism::new_unchecked(apex.clone(), a.clone(), (0..size).map(|x| x / m).collect());
    let right =
        Morphism::new_unchecked(apex.clone(), b.clone(), (0..size).map(|x| x % m).collect());
    SpanObject { apex, left, right }
}

/// The mediating morphism into a jointly injective span: sends `x` to the
/// apex element over `(u(x), v(x))`.
///
/// Panics when the span has duplicate leg pairs or when some `(u(x), v(x))`
/// has no apex element; callers pair into spans they built, with legs they
/// know to be compatible.
pub fn pair_into<A: Algebra>(
    span: &SpanObject<A>,
    u: &Morphism<A>,
    v: &Morphism<A>,
) -> Morphism<A> {
    assert_eq!(u.source(), v.source(), "pairing legs must share a source");
    assert_eq!(u.target(), span.left.target(), "left leg target mismatch");
    assert_eq!(v.target(), span.right.target(), "right leg target mismatch");
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for i in span.apex.elements() {
        let prev = index.insert((span.left.apply(i), span.right.apply(i)), i);
        assert!(prev.is_none(), "span legs are not jointly injective");
    }
    let map = u
        .source()
        .elements()
        .map(|x| {
            *index
                .get(&(u.apply(x), v.apply(x)))
                .expect("legs are not compatible over the span")
        })
        .collect();
    Morphism::new_unchecked(u.source().clone(), span.apex.clone(), map)
}

/// The pullback of `f` and `g` over their common target.
///
/// The apex carrier is the list of pairs `(a, b)` with `f(a) = g(b)` in
/// lexicographic order; the legs project to the sources of `f` and `g`.
pub fn pullback<A: Algebra>(f: &Morphism<A>, g: &Morphism<A>) -> SpanObject<A> {
    assert_eq!(f.target(), g.target(), "pullback needs a common target");
    let mut pairs = Vec::new();
    for a in f.source().elements() {
        for b in g.source().elements() {
            if f.apply(a) == g.apply(b) {
                pairs.push((a, b));
            }
        }
    }
    let size = pairs.len();
    let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(size);
    for (i, &p) in pairs.iter().enumerate() {
        index.insert(p, i);
    }
    let mut tables = Vec::with_capacity(A::OP_COUNT);
    for which in 0..A::OP_COUNT {
        let mut t = vec![0usize; size * size];
        for (i, &(xa, xb)) in pairs.iter().enumerate() {
            for (j, &(ya, yb)) in pairs.iter().enumerate() {
                let key = (
                    f.source().op(which, xa, ya),
                    g.source().op(which, xb, yb),
                );
                t[i * size + j] = index[&key];
            }
        }
        tables.push(t);
    }
    let neutral = index[&(f.source().neutral(), g.source().neutral())];
    let apex = Arc::new(A::from_tables_trusted(size, neutral, tables));
    let left = Morphism::new_unchecked(
        apex.clone(),
        f.source().clone(),
        pairs.iter().map(|&(a, _)| a).collect(),
    );
    let right = Morphism::new_unchecked(
        apex.clone(),
        g.source().clone(),
        pairs.iter().map(|&(_, b)| b).collect(),
    );
    SpanObject { apex, left, right }
}

/// Kernel pair data of a morphism: its fiber congruence, the span of both
/// projections, and the diagonal section.
#[derive(Debug, Clone)]
pub struct KernelPair<A: Algebra> {
    pub congruence: Congruence<A>,
    pub span: SpanObject<A>,
    pub diagonal: Morphism<A>,
}

/// The kernel pair of `f`: all pairs identified by `f`, with projections and
/// the diagonal.
pub fn kernel_pair<A: Algebra>(f: &Morphism<A>) -> KernelPair<A> {
    let span = pullback(f, f);
    let congruence = Congruence::from_class_keys(f.source().clone(), f.map().to_vec());
    let id = crate::algebra::identity(f.source());
    let diagonal = pair_into(&span, &id, &id);
    KernelPair {
        congruence,
        span,
        diagonal,
    }
}

/// A partition of a carrier compatible with all operations.
///
/// Classes are numbered in order of their least member, and `class_of` maps
/// each element to its class id; equal partitions therefore have equal
/// representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence<A: Algebra> {
    base: Arc<A>,
    class_of: Vec<usize>,
    class_count: usize,
}

impl<A: Algebra> Congruence<A> {
    /// Builds the partition whose classes are the fibers of `key`, with
    /// canonical numbering. The compatibility of the partition is the
    /// caller's business; fibers of a homomorphism and unions produced by
    /// congruence closure always are.
    pub(crate) fn from_class_keys(base: Arc<A>, key: Vec<usize>) -> Self {
        assert_eq!(key.len(), base.size());
        let mut renumber: HashMap<usize, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(key.len());
        for &k in &key {
            let next = renumber.len();
            class_of.push(*renumber.entry(k).or_insert(next));
        }
        let class_count = renumber.len();
        Congruence {
            base,
            class_of,
            class_count,
        }
    }

    /// The all-singletons congruence.
    pub fn discrete(base: Arc<A>) -> Self {
        let n = base.size();
        Congruence {
            base,
            class_of: (0..n).collect(),
            class_count: n,
        }
    }

    pub fn base(&self) -> &Arc<A> {
        &self.base
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class_of
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Least member of each class, indexed by class id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.class_count];
        for (a, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = a;
            }
        }
        reps
    }

    /// Exhaustive compatibility check, used by tests.
    pub fn is_compatible(&self) -> bool {
        let a = &self.base;
        for which in 0..A::OP_COUNT {
            for x in a.elements() {
                for y in a.elements() {
                    if !self.related(x, y) {
                        continue;
                    }
                    for c in a.elements() {
                        if !self.related(a.op(which, x, c), a.op(which, y, c))
                            || !self.related(a.op(which, c, x), a.op(which, c, y))
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// The smallest congruence containing the given pairs.
///
/// Union-find with a pending queue: merging two classes enqueues the
/// translates of their representatives by every element on both sides of
/// every operation, which restores compatibility one merge at a time.
pub fn congruence_closure<A: Algebra>(
    base: &Arc<A>,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Congruence<A> {
    let n = base.size();
    let mut uf = UnionFind::new(n);
    let mut pending: VecDeque<(usize, usize)> = pairs.into_iter().collect();
    while let Some((a, b)) = pending.pop_front() {
        let (ra, rb) = (uf.find(a), uf.find(b));
        if ra == rb {
            continue;
        }
        let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
        uf.parent[gone] = keep;
        for which in 0..A::OP_COUNT {
            for c in 0..n {
                pending.push_back((base.op(which, keep, c), base.op(which, gone, c)));
                pending.push_back((base.op(which, c, keep), base.op(which, c, gone)));
            }
        }
    }
    let key: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::from_class_keys(base.clone(), key)
}

/// The quotient algebra of a congruence, with the projection morphism.
pub fn quotient<A: Algebra>(c: &Congruence<A>) -> (Arc<A>, Morphism<A>) {
    let base = c.base();
    let reps = c.representatives();
    let k = c.class_count();
    let mut tables = Vec::with_capacity(A::OP_COUNT);
    for which in 0..A::OP_COUNT {
        let mut t = vec![0usize; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                t[i * k + j] = c.class_of(base.op(which, a, b));
            }
        }
        tables.push(t);
    }
    let obj = Arc::new(A::from_tables_trusted(
        k,
        c.class_of(base.neutral()),
        tables,
    ));
    let map = Morphism::new_unchecked(base.clone(), obj.clone(), c.classes().to_vec());
    (obj, map)
}

/// Coequalizer data of a parallel pair.
#[derive(Debug, Clone)]
pub struct Coequalizer<A: Algebra> {
    pub congruence: Congruence<A>,
    pub object: Arc<A>,
    pub map: Morphism<A>,
}

/// The coequalizer of a parallel pair `u, v: R -> X` that admits a common
/// section: the quotient of `X` by the congruence generated by all
/// `(u(r), v(r))`.
pub fn coequalizer_of_reflexive_pair<A: Algebra>(
    u: &Morphism<A>,
    v: &Morphism<A>,
) -> Coequalizer<A> {
    assert_eq!(u.source(), v.source(), "parallel pair source mismatch");
    assert_eq!(u.target(), v.target(), "parallel pair target mismatch");
    let congruence = congruence_closure(
        u.target(),
        u.source().elements().map(|r| (u.apply(r), v.apply(r))),
    );
    let (object, map) = quotient(&congruence);
    Coequalizer {
        congruence,
        object,
        map,
    }
}

/// The unique morphism onto the one element algebra.
pub fn terminal_morphism<A: Algebra>(a: &Arc<A>) -> Morphism<A> {
    let c = Congruence::from_class_keys(a.clone(), vec![0; a.size()]);
    quotient(&c).1
}

/// Factors `f` as a surjection onto its image followed by an injection.
pub fn image_factorization<A: Algebra>(f: &Morphism<A>) -> (Morphism<A>, Morphism<A>) {
    let mut elems: Vec<usize> = Vec::new();
    let mut seen = vec![false; f.target().size()];
    for a in f.source().elements() {
        let v = f.apply(a);
        if !seen[v] {
            seen[v] = true;
            elems.push(v);
        }
    }
    elems.sort_unstable();
    let (im, embed) = subalgebra(f.target(), &elems);
    let mut position = vec![usize::MAX; f.target().size()];
    for (i, &e) in elems.iter().enumerate() {
        position[e] = i;
    }
    let surj = Morphism::new_unchecked(
        f.source().clone(),
        im,
        f.map().iter().map(|&v| position[v]).collect(),
    );
    (surj, embed)
}

/// Why a morphism fails to factor through a surjection.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("the morphisms do not share a source")]
    SourceMismatch,

    #[error("cannot factor through a non-surjection: {missing} has no preimage")]
    NotSurjective { missing: usize },

    #[error("not constant on the fiber over {over}: {a} maps to {ga} but {b} maps to {gb}")]
    NotConstantOnFibers {
        over: usize,
        a: usize,
        b: usize,
        ga: usize,
        gb: usize,
    },
}

/// The unique `h` with `h . e = g` for a surjection `e`, when it exists.
pub fn factor_through<A: Algebra>(
    e: &Morphism<A>,
    g: &Morphism<A>,
) -> Result<Morphism<A>, FactorError> {
    if e.source() != g.source() {
        return Err(FactorError::SourceMismatch);
    }
    let n = e.target().size();
    let mut map = vec![usize::MAX; n];
    let mut witness = vec![usize::MAX; n];
    for a in e.source().elements() {
        let y = e.apply(a);
        let v = g.apply(a);
        if map[y] == usize::MAX {
            map[y] = v;
            witness[y] = a;
        } else if map[y] != v {
            return Err(FactorError::NotConstantOnFibers {
                over: y,
                a: witness[y],
                b: a,
                ga: map[y],
                gb: v,
            });
        }
    }
    if let Some(missing) = map.iter().position(|&v| v == usize::MAX) {
        return Err(FactorError::NotSurjective { missing });
    }
    Ok(Morphism::new_unchecked(
        e.target().clone(),
        g.target().clone(),
        map,
    ))
}

/// Ways a reflexive graph of arrows can fail to hold together.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("the {row} pair does not share endpoints")]
    PairMismatch { row: &'static str },

    #[error("the {row} section does not split both legs")]
    BrokenSection { row: &'static str },

    #[error("the vertical legs do not connect the rows endpoint to endpoint")]
    VerticalMismatch,

    #[error("leg {index} does not commute with the vertical maps at {at}")]
    SquareDoesNotCommute { index: usize, at: usize },

    #[error("the sections do not correspond under the vertical maps at {at}")]
    SectionsDoNotCorrespond { at: usize },
}

/// Two reflexive pairs joined by a morphism of graphs: an edge map between
/// the pair sources and a vertex map between the pair targets, commuting
/// with both legs and with the sections.
#[derive(Debug, Clone)]
pub struct ReflexiveGraphOfArrows<A: Algebra> {
    pub top_pair: (Morphism<A>, Morphism<A>),
    pub top_section: Morphism<A>,
    pub bottom_pair: (Morphism<A>, Morphism<A>),
    pub bottom_section: Morphism<A>,
    /// Vertical map between the pair sources.
    pub edge_map: Morphism<A>,
    /// Vertical map between the pair targets.
    pub vertex_map: Morphism<A>,
}

impl<A: Algebra> ReflexiveGraphOfArrows<A> {
    pub fn new(
        top_pair: (Morphism<A>, Morphism<A>),
        top_section: Morphism<A>,
        bottom_pair: (Morphism<A>, Morphism<A>),
        bottom_section: Morphism<A>,
        edge_map: Morphism<A>,
        vertex_map: Morphism<A>,
    ) -> Result<Self, GraphError> {
        check_row(&top_pair, &top_section, "top")?;
        check_row(&bottom_pair, &bottom_section, "bottom")?;
        if edge_map.source() != top_pair.0.source()
            || edge_map.target() != bottom_pair.0.source()
            || vertex_map.source() != top_pair.0.target()
            || vertex_map.target() != bottom_pair.0.target()
        {
            return Err(GraphError::VerticalMismatch);
        }
        for (index, (top, bottom)) in [
            (&top_pair.0, &bottom_pair.0),
            (&top_pair.1, &bottom_pair.1),
        ]
        .into_iter()
        .enumerate()
        {
            for s in edge_map.source().elements() {
                if vertex_map.apply(top.apply(s)) != bottom.apply(edge_map.apply(s)) {
                    return Err(GraphError::SquareDoesNotCommute { index, at: s });
                }
            }
        }
        for a in vertex_map.source().elements() {
            if edge_map.apply(top_section.apply(a))
                != bottom_section.apply(vertex_map.apply(a))
            {
                return Err(GraphError::SectionsDoNotCorrespond { at: a });
            }
        }
        Ok(ReflexiveGraphOfArrows {
            top_pair,
            top_section,
            bottom_pair,
            bottom_section,
            edge_map,
            vertex_map,
        })
    }

    /// Whether the bottom pair is jointly the kernel pair of its own
    /// coequalizer, so the bottom row presents an effective congruence.
    pub fn bottom_row_is_kernel_pair(&self) -> bool {
        let coeq = coequalizer_of_reflexive_pair(&self.bottom_pair.0, &self.bottom_pair.1);
        let mut seen = std::collections::HashSet::new();
        for s in self.bottom_pair.0.source().elements() {
            seen.insert((self.bottom_pair.0.apply(s), self.bottom_pair.1.apply(s)));
        }
        let n = coeq.map.source().size();
        for x in 0..n {
            for y in 0..n {
                let related = coeq.map.apply(x) == coeq.map.apply(y);
                if related != seen.contains(&(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// Coequalizes both rows and factors the vertex map through them,
    /// returning the top quotient, the bottom quotient, and the induced
    /// morphism between them.
    pub fn induced_on_coequalizers(
        &self,
    ) -> (Coequalizer<A>, Coequalizer<A>, Morphism<A>) {
        let top = coequalizer_of_reflexive_pair(&self.top_pair.0, &self.top_pair.1);
        let bottom =
            coequalizer_of_reflexive_pair(&self.bottom_pair.0, &self.bottom_pair.1);
        let composite = crate::algebra::compose(&bottom.map, &self.vertex_map);
        let induced = factor_through(&top.map, &composite)
            .expect("the commuting squares make the composite constant on top fibers");
        (top, bottom, induced)
    }
}

fn check_row<A: Algebra>(
    pair: &(Morphism<A>, Morphism<A>),
    section: &Morphism<A>,
    row: &'static str,
) -> Result<(), GraphError> {
    if pair.0.source() != pair.1.source() || pair.0.target() != pair.1.target() {
        return Err(GraphError::PairMismatch { row });
    }
    if section.source() != pair.0.target() || section.target() != pair.0.source() {
        return Err(GraphError::BrokenSection { row });
    }
    for a in section.source().elements() {
        let s = section.apply(a);
        if pair.0.apply(s) != a || pair.1.apply(s) != a {
            return Err(GraphError::BrokenSection { row });
        }
    }
    Ok(())
}
