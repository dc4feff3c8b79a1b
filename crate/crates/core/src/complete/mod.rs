//! The three reflections and their unit morphisms.
//!
//! Each reflection sends an algebra to its universal member of a
//! subcategory, staying inside the same signature:
//!
//! - monoids to groups ([`ToGroups`]),
//! - monoids to abelian groups ([`ToAbelianGroups`]),
//! - semirings to rings ([`ToRings`]).
//!
//! At finite scale every one of these units is surjective: the image of the
//! unit is a finite submonoid of a group, hence a subgroup, and it
//! generates. Reflections are therefore computed as explicit quotients, and
//! the reflector acts on morphisms by factoring through the unit.
//!
//! Two independent routes compute the group reflection. Commutative
//! monoids quotient by the cancellation relation (`a` relates to `b` when
//! `a + k = b + k` for some `k`); the general route presents the group on
//! one generator per element and runs coset enumeration, which carries a
//! room bound and is the single source of `inconclusive` answers in this
//! crate. [`grothendieck`] builds the same group out of formal difference
//! pairs and exists to cross-check the other two.

pub mod coset;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{
    compose, identity, Algebra, FiniteMonoid, FiniteSemiring, Morphism,
};
use crate::construct::{congruence_closure, factor_through, product, quotient, Congruence};
use coset::{enumerate_cosets, EnumerationOutcome, Presentation};
use thiserror::Error;

/// Cap on cosets defined during group completion when the caller does not
/// pick one.
pub const DEFAULT_GROUP_BOUND: usize = 64;

/// Names one of the three reflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContextId {
    /// Monoids into groups.
    MonGp,
    /// Monoids into abelian groups.
    MonAb,
    /// Semirings into rings.
    SRngRng,
}

impl ContextId {
    pub fn code(self) -> &'static str {
        match self {
            ContextId::MonGp => "mon-gp",
            ContextId::MonAb => "mon-ab",
            ContextId::SRngRng => "srng-rng",
        }
    }

    pub const ALL: [ContextId; 3] = [ContextId::MonGp, ContextId::MonAb, ContextId::SRngRng];
}

impl fmt::Display for ContextId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl std::str::FromStr for ContextId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mon-gp" => Ok(ContextId::MonGp),
            "mon-ab" => Ok(ContextId::MonAb),
            "srng-rng" => Ok(ContextId::SRngRng),
            other => Err(format!(
                "unknown context {other:?}, expected mon-gp, mon-ab or srng-rng"
            )),
        }
    }
}

/// A completion that gave up before closing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("inconclusive: {reason}")]
pub struct Inconclusive {
    pub reason: String,
}

/// The unit of a reflection at one object.
#[derive(Debug, Clone)]
pub struct Reflection<A: Algebra> {
    /// The reflected object, in the same signature.
    pub object: Arc<A>,
    /// The unit morphism into it. Always surjective at finite scale.
    pub unit: Morphism<A>,
}

/// Either a finished reflection or a report that the room bound was hit.
pub type ReflectionResult<A> = Result<Reflection<A>, Inconclusive>;

/// A morphism pushed through a reflector, with the reflections of both
/// endpoints.
#[derive(Debug, Clone)]
pub struct ReflectedMorphism<A: Algebra> {
    pub source: Reflection<A>,
    pub target: Reflection<A>,
    pub map: Morphism<A>,
}

/// A reflective subcategory with a computable reflector.
pub trait GaloisContext<A: Algebra>: Send + Sync {
    fn id(&self) -> ContextId;

    /// Whether the algebra already lies in the subcategory.
    fn is_member(&self, a: &A) -> bool;

    /// The reflection of an object, cached per context.
    fn reflect(&self, a: &Arc<A>) -> ReflectionResult<A>;

    /// The reflector on a morphism: the unique map between the reflected
    /// endpoints commuting with both units.
    fn apply_to(&self, f: &Morphism<A>) -> Result<ReflectedMorphism<A>, Inconclusive> {
        let source = self.reflect(f.source())?;
        let target = self.reflect(f.target())?;
        let map = factor_through(&source.unit, &compose(&target.unit, f))
            .expect("a surjective unit factors every morphism into a member");
        Ok(ReflectedMorphism {
            source,
            target,
            map,
        })
    }
}

/// A monoid that was expected to be commutative.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("monoid is not commutative: {a} and {b} do not commute")]
pub struct NotCommutative {
    pub a: usize,
    pub b: usize,
}

fn cancellation_congruence<A: Algebra>(m: &Arc<A>, which: usize) -> Congruence<A> {
    let n = m.size();
    // key[a] = least b related to a under: some k translates a and b to the
    // same element. The relation is transitive because witnesses compose.
    let related = |a: usize, b: usize| (0..n).any(|k| m.op(which, a, k) == m.op(which, b, k));
    let key: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| related(a, b)).unwrap())
        .collect();
    Congruence::from_class_keys(m.clone(), key)
}

/// Group completion of a commutative monoid: the quotient by the
/// cancellation relation.
pub fn group_complete_commutative(
    m: &Arc<FiniteMonoid>,
) -> Result<(Arc<FiniteMonoid>, Morphism<FiniteMonoid>), NotCommutative> {
    if let Some((a, b)) = first_noncommuting(m) {
        return Err(NotCommutative { a, b });
    }
    let c = cancellation_congruence(m, 0);
    assert!(c.is_compatible(), "cancellation relation must be a congruence");
    let (obj, unit) = quotient(&c);
    assert!(obj.is_group(), "cancellation quotient must be a group");
    let named = Arc::new(obj.as_ref().clone().named(format!("Gp({})", m.label())));
    let unit = Morphism::new_unchecked(m.clone(), named.clone(), unit.map().to_vec());
    Ok((named, unit))
}

fn first_noncommuting(m: &FiniteMonoid) -> Option<(usize, usize)> {
    for a in m.elements() {
        for b in m.elements() {
            if m.mul(a, b) != m.mul(b, a) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Group completion of a commutative monoid out of formal difference
/// pairs: the product of the monoid with itself, modulo translating both
/// components. Independent of [`group_complete_commutative`]; the test
/// suites hold the two against each other.
pub fn grothendieck(
    m: &Arc<FiniteMonoid>,
) -> (Arc<FiniteMonoid>, Morphism<FiniteMonoid>) {
    assert!(
        m.is_commutative(),
        "difference pairs require a commutative monoid"
    );
    let n = m.size();
    let span = product(m, m);
    let mut pairs = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for k in 0..n {
                pairs.push((p * n + q, m.mul(p, k) * n + m.mul(q, k)));
            }
        }
    }
    let c = congruence_closure(&span.apex, pairs);
    let (obj, proj) = quotient(&c);
    assert!(obj.is_group(), "difference pairs must form a group");
    let named = Arc::new(obj.as_ref().clone().named(format!("Gr({})", m.label())));
    let e = m.identity();
    let map: Vec<usize> = (0..n).map(|a| proj.apply(a * n + e)).collect();
    let unit = Morphism::new(m.clone(), named.clone(), map)
        .expect("inserting elements as differences against zero is a morphism");
    (named, unit)
}

/// Group completion of an arbitrary monoid by coset enumeration over the
/// presentation with one generator per element and one relator per product.
///
/// The group is always finite (its order is at most the monoid's), but the
/// enumeration may need more transient cosets than the cap allows; that
/// case reports how much room was requested.
pub fn group_complete_general(
    m: &Arc<FiniteMonoid>,
    max_cosets: usize,
) -> ReflectionResult<FiniteMonoid> {
    let n = m.size();
    let mut relators = vec![vec![2 * m.identity()]];
    for a in 0..n {
        for b in 0..n {
            relators.push(vec![2 * a, 2 * b, 2 * m.mul(a, b) + 1]);
        }
    }
    let p = Presentation {
        generators: n,
        relators,
    };
    let table = match enumerate_cosets(&p, max_cosets) {
        EnumerationOutcome::Complete { table } => table,
        EnumerationOutcome::OutOfRoom { defined } => {
            return Err(Inconclusive {
                reason: format!(
                    "coset enumeration for {} exceeded the room bound of {max_cosets} \
                     after defining {defined} cosets",
                    m.label()
                ),
            })
        }
    };
    let k = table.len();
    // Reach every coset from the identity coset; the trace of the path
    // multiplies i by the group element of j.
    let words: Vec<Vec<usize>> = {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; k];
        words[0] = Some(Vec::new());
        let mut frontier = vec![0usize];
        while let Some(c) = frontier.pop() {
            let base = words[c].clone().unwrap();
            for s in 0..2 * n {
                let d = table[c][s];
                if words[d].is_none() {
                    let mut w = base.clone();
                    w.push(s);
                    words[d] = Some(w);
                    frontier.push(d);
                }
            }
        }
        words.into_iter().map(Option::unwrap).collect()
    };
    let mut t = vec![0usize; k * k];
    for i in 0..k {
        for (j, word) in words.iter().enumerate() {
            t[i * k + j] = word.iter().fold(i, |at, &s| table[at][s]);
        }
    }
    let obj = FiniteMonoid::new(k, 0, t).expect("a closed coset table is a group table");
    assert!(obj.is_group());
    let named = Arc::new(obj.named(format!("Gp({})", m.label())));
    let unit_map: Vec<usize> = (0..n).map(|a| table[0][2 * a]).collect();
    let unit = Morphism::new(m.clone(), named.clone(), unit_map)
        .expect("sending each element to its generator coset is a morphism");
    Ok(Reflection {
        object: named,
        unit,
    })
}

/// The universal morphism into an abelian group: commutative quotient
/// followed by group completion.
pub fn abelianize(
    m: &Arc<FiniteMonoid>,
) -> (Arc<FiniteMonoid>, Morphism<FiniteMonoid>) {
    let mut pairs = Vec::new();
    for a in m.elements() {
        for b in m.elements() {
            pairs.push((m.mul(a, b), m.mul(b, a)));
        }
    }
    let c = congruence_closure(m, pairs);
    let (comm, p1) = quotient(&c);
    let (group, p2) =
        group_complete_commutative(&comm).expect("the commutative quotient commutes");
    let named = Arc::new(
        group
            .as_ref()
            .clone()
            .named(format!("Ab({})", m.label())),
    );
    let unit = Morphism::new_unchecked(
        m.clone(),
        named.clone(),
        compose(&p2, &p1).map().to_vec(),
    );
    (named, unit)
}

/// The universal morphism into a ring: the quotient by additive
/// cancellation, which the multiplication descends along.
///
/// The descent is forced (translating a cancellation witness by a factor
/// gives a cancellation witness), and the congruence check asserts it
/// exhaustively anyway.
pub fn ring_complete(
    s: &Arc<FiniteSemiring>,
) -> (Arc<FiniteSemiring>, Morphism<FiniteSemiring>) {
    let c = cancellation_congruence(s, 0);
    assert!(
        c.is_compatible(),
        "multiplication failed to descend along additive cancellation"
    );
    let (obj, unit) = quotient(&c);
    assert!(obj.is_ring(), "additive cancellation quotient must be a ring");
    let named = Arc::new(obj.as_ref().clone().named(format!("Rng({})", s.label())));
    let unit = Morphism::new_unchecked(s.clone(), named.clone(), unit.map().to_vec());
    (named, unit)
}

fn identity_reflection<A: Algebra>(a: &Arc<A>) -> Reflection<A> {
    Reflection {
        object: a.clone(),
        unit: identity(a),
    }
}

/// The reflection of monoids into groups, with a coset room bound.
#[derive(Debug, Clone)]
pub struct ToGroups {
    pub bound: usize,
}

impl Default for ToGroups {
    fn default() -> Self {
        ToGroups {
            bound: DEFAULT_GROUP_BOUND,
        }
    }
}

type MonoidCache = Mutex<HashMap<(usize, FiniteMonoid), ReflectionResult<FiniteMonoid>>>;

static GROUP_CACHE: OnceLock<MonoidCache> = OnceLock::new();
static AB_CACHE: OnceLock<Mutex<HashMap<FiniteMonoid, Reflection<FiniteMonoid>>>> =
    OnceLock::new();
static RING_CACHE: OnceLock<Mutex<HashMap<FiniteSemiring, Reflection<FiniteSemiring>>>> =
    OnceLock::new();

impl GaloisContext<FiniteMonoid> for ToGroups {
    fn id(&self) -> ContextId {
        ContextId::MonGp
    }

    fn is_member(&self, a: &FiniteMonoid) -> bool {
        a.is_group()
    }

    fn reflect(&self, a: &Arc<FiniteMonoid>) -> ReflectionResult<FiniteMonoid> {
        if self.is_member(a) {
            return Ok(identity_reflection(a));
        }
        let cache = GROUP_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (self.bound, a.as_ref().clone());
        if let Some(hit) = cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let result = if a.is_commutative() {
            let (object, unit) = group_complete_commutative(a).unwrap();
            Ok(Reflection { object, unit })
        } else {
            group_complete_general(a, self.bound)
        };
        cache.lock().unwrap().insert(key, result.clone());
        result
    }
}

/// The reflection of monoids into abelian groups.
#[derive(Debug, Clone, Default)]
pub struct ToAbelianGroups;

impl GaloisContext<FiniteMonoid> for ToAbelianGroups {
    fn id(&self) -> ContextId {
        ContextId::MonAb
    }

    fn is_member(&self, a: &FiniteMonoid) -> bool {
        a.is_abelian_object()
    }

    fn reflect(&self, a: &Arc<FiniteMonoid>) -> ReflectionResult<FiniteMonoid> {
        if self.is_member(a) {
            return Ok(identity_reflection(a));
        }
        let cache = AB_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(a.as_ref()) {
            return Ok(hit.clone());
        }
        let (object, unit) = abelianize(a);
        let r = Reflection { object, unit };
        cache
            .lock()
            .unwrap()
            .insert(a.as_ref().clone(), r.clone());
        Ok(r)
    }
}

/// The reflection of semirings into rings.
#[derive(Debug, Clone, Default)]
pub struct ToRings;

impl GaloisContext<FiniteSemiring> for ToRings {
    fn id(&self) -> ContextId {
        ContextId::SRngRng
    }

    fn is_member(&self, a: &FiniteSemiring) -> bool {
        a.is_ring()
    }

    fn reflect(&self, a: &Arc<FiniteSemiring>) -> ReflectionResult<FiniteSemiring> {
        if self.is_member(a) {
            return Ok(identity_reflection(a));
        }
        let cache = RING_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = cache.lock().unwrap().get(a.as_ref()) {
            return Ok(hit.clone());
        }
        let (object, unit) = ring_complete(a);
        let r = Reflection { object, unit };
        cache
            .lock()
            .unwrap()
            .insert(a.as_ref().clone(), r.clone());
        Ok(r)
    }
}

/// The monoid-signature context named by an id, when there is one.
pub fn monoid_context(
    id: ContextId,
    group_bound: usize,
) -> Option<Box<dyn GaloisContext<FiniteMonoid>>> {
    match id {
        ContextId::MonGp => Some(Box::new(ToGroups { bound: group_bound })),
        ContextId::MonAb => Some(Box::new(ToAbelianGroups)),
        ContextId::SRngRng => None,
    }
}

/// The semiring-signature context named by an id, when there is one.
pub fn semiring_context(id: ContextId) -> Option<Box<dyn GaloisContext<FiniteSemiring>>> {
    match id {
        ContextId::SRngRng => Some(Box::new(ToRings)),
        _ => None,
    }
}

/// Checks that a reflection unit has the defining property against one
/// member: every morphism into the member factors through the unit, in
/// exactly one way.
pub fn verify_universal_property<A: Algebra>(
    r: &Reflection<A>,
    ctx: &dyn GaloisContext<A>,
    probe: &Arc<A>,
) -> bool {
    assert!(ctx.is_member(probe), "probe must lie in the subcategory");
    let from_object = crate::enumerate::enumerate_homs(r.unit.source(), probe);
    let from_reflected = crate::enumerate::enumerate_homs(&r.object, probe);
    // The unit is surjective, so distinct morphisms off the reflection
    // stay distinct after precomposition; counting both sides then pins
    // uniqueness and the factor check pins existence.
    if from_object.len() != from_reflected.len() {
        return false;
    }
    from_object
        .iter()
        .all(|f| match factor_through(&r.unit, f) {
            Ok(h) => compose(&h, &r.unit) == *f,
            Err(_) => false,
        })
}

/// True when two completions of the same object agree: the unique
/// comparison between them is an isomorphism commuting with both units.
pub fn units_agree<A: Algebra>(left: &Reflection<A>, right: &Reflection<A>) -> bool {
    match factor_through(&left.unit, &right.unit) {
        Ok(cmp) => cmp.is_bijective() && compose(&cmp, &left.unit) == right.unit,
        Err(_) => false,
    }
}

/// Whether the reflector carries the pullback of `f` and `g` to the
/// pullback of their reflected morphisms: the comparison from the
/// reflected apex into the downstairs pullback must be bijective.
///
/// This fails for general cospans; the admissibility statement only
/// promises preservation when one leg is a trivial extension, and the
/// sweeps choose their cospans accordingly.
pub fn reflector_preserves_pullback<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    f: &Morphism<A>,
    g: &Morphism<A>,
) -> Result<bool, Inconclusive> {
    let upstairs = crate::construct::pullback(f, g);
    let rf = ctx.apply_to(f)?;
    let rg = ctx.apply_to(g)?;
    let rleft = ctx.apply_to(&upstairs.left)?;
    let rright = ctx.apply_to(&upstairs.right)?;
    let downstairs = crate::construct::pullback(&rf.map, &rg.map);
    // The reflector is functorial, so the reflected legs commute with the
    // reflected cospan and the pairing lands in the downstairs apex.
    let comparison = crate::construct::pair_into(&downstairs, &rleft.map, &rright.map);
    Ok(comparison.is_bijective())
}
