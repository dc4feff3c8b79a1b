//! Exhaustive property surveys over small finite algebras.
//!
//! A survey names a statement, sweeps every instance it applies to inside
//! an order bound, and tallies how the instances scored. Instances are
//! drawn from the isomorphism class enumerations, so each mathematical
//! situation is counted once. Reports are deterministic: the instance
//! order follows the enumeration order, and a parallel run produces the
//! same tallies and the same counterexample lines as a sequential one.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{compose, Algebra, FiniteMonoid, Morphism, Point};
use crate::classify::{
    central_witness_search, check_homogeneous, classify_gamma_ab_normal, is_central_extension,
    is_normal_extension, is_schreier_point, is_special_homogeneous, is_trivial_extension, Verdict,
};
use crate::complete::{
    abelianize, monoid_context, reflector_preserves_pullback, semiring_context, ContextId,
    GaloisContext, Inconclusive, ToGroups,
};
use crate::construct::{factor_through, pair_into, product};
use crate::enumerate::{
    abelian_group_classes, enumerate_homs, enumerate_surjections, sections_of, Enumerable,
};
use crate::error::Side;
use crate::normalize::{normalize, verify_g7_closure, verify_norm_universal};
use crate::samples;

/// Default order bound for sweeps that run a reflector per instance.
const DEFAULT_SWEEP_ORDER: usize = 3;

/// Default order bound for purely combinatorial predicates.
const DEFAULT_CHEAP_ORDER: usize = 4;

/// Default bound on the order of the product in the abelianization
/// product survey.
const DEFAULT_PRODUCT_ORDER: usize = 8;

/// Largest order the exhaustive monoid enumeration is asked for. Factors
/// above this wall are covered by constructed samples instead.
const ENUMERATION_WALL: usize = 6;

/// Order bound requested from the witness track of the central survey.
const WITNESS_ORDER_BOUND: usize = 9;

/// The surveys this module can run, in reporting order.
pub const SURVEY_NAMES: [&str; 8] = [
    "schreier-homogeneous",
    "trivial-vs-special-homogeneous",
    "normal-central-equivalence",
    "gamma-ab-prop66",
    "ab-product-lemma",
    "g7-closure",
    "norm-universal",
    "reflector-preserves-pullbacks",
];

/// Why a survey request could not start.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurveyError {
    #[error("no survey is named {0:?}")]
    UnknownSurvey(String),

    #[error("survey {survey:?} does not run in context {context}")]
    UnsupportedContext {
        survey: String,
        context: &'static str,
    },
}

/// Knobs shared by every survey.
#[derive(Debug, Clone)]
pub struct SurveyOptions {
    /// Largest algebra order enumerated; None takes the survey's default.
    pub max_order: Option<usize>,
    /// Order bound for probe objects in universal property checks.
    pub probe_order_bound: usize,
    /// Room bound handed to group completions.
    pub group_bound: usize,
    /// Spread instances across threads when the parallel feature is
    /// compiled in. Reports come out identical either way.
    pub parallel: bool,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            max_order: None,
            probe_order_bound: 4,
            group_bound: ToGroups::default().bound,
            parallel: true,
        }
    }
}

/// How one instance scored against one property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

impl Outcome {
    fn of(b: bool) -> Outcome {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

fn verdict_outcome(v: &Result<Verdict, Inconclusive>) -> Outcome {
    match v {
        Ok(verdict) => Outcome::of(verdict.holds),
        Err(_) => Outcome::Inconclusive,
    }
}

/// Running counts for one property across a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub property: String,
    /// Whether a failure refutes the surveyed statement. Non-invariant
    /// tallies only describe the instance mix.
    pub invariant: bool,
    pub holds: usize,
    pub fails: usize,
    pub inconclusive: usize,
}

impl PropertyTally {
    fn measured(property: &str) -> PropertyTally {
        PropertyTally {
            property: property.to_string(),
            invariant: false,
            holds: 0,
            fails: 0,
            inconclusive: 0,
        }
    }

    fn required(property: &str) -> PropertyTally {
        PropertyTally {
            invariant: true,
            ..PropertyTally::measured(property)
        }
    }

    fn absorb(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Holds => self.holds += 1,
            Outcome::Fails => self.fails += 1,
            Outcome::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.holds + self.fails + self.inconclusive
    }
}

/// Overall reading of a finished survey.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurveyVerdict {
    Passed,
    Inconclusive,
    Failed,
}

/// Everything a survey run reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub survey: String,
    pub context: &'static str,
    pub signature: &'static str,
    pub max_order: usize,
    pub instances: usize,
    pub verdict: SurveyVerdict,
    pub tallies: Vec<PropertyTally>,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl SurveyReport {
    pub fn passed(&self) -> bool {
        self.verdict == SurveyVerdict::Passed
    }
}

/// Per instance result: one outcome per tally slot, plus an optional
/// counterexample line.
struct Row {
    outcomes: Vec<Outcome>,
    counterexample: Option<String>,
}

impl Row {
    fn new(outcomes: Vec<Outcome>) -> Row {
        Row {
            outcomes,
            counterexample: None,
        }
    }

    fn flagged(outcomes: Vec<Outcome>, line: String) -> Row {
        Row {
            outcomes,
            counterexample: Some(line),
        }
    }
}

/// Applies the worker to every instance, preserving the instance order so
/// that parallel and sequential runs assemble identical reports.
fn map_rows<T, F>(parallel: bool, items: &[T], worker: F) -> Vec<Row>
where
    T: Sync,
    F: Fn(&T) -> Row + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            use rayon::prelude::*;
            return items.par_iter().map(&worker).collect();
        }
    }
    let _ = parallel;
    items.iter().map(|t| worker(t)).collect()
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    survey: &str,
    context: &'static str,
    signature: &'static str,
    max_order: usize,
    mut tallies: Vec<PropertyTally>,
    rows: Vec<Row>,
    notes: Vec<String>,
    started: Instant,
) -> SurveyReport {
    let instances = rows.len();
    let mut counterexamples = Vec::new();
    for row in rows {
        assert_eq!(row.outcomes.len(), tallies.len(), "row width mismatch");
        for (tally, outcome) in tallies.iter_mut().zip(row.outcomes) {
            tally.absorb(outcome);
        }
        if let Some(line) = row.counterexample {
            counterexamples.push(line);
        }
    }
    debug_assert!(
        tallies.iter().all(|t| t.total() == instances),
        "every tally covers every instance exactly once"
    );
    let failed =
        !counterexamples.is_empty() || tallies.iter().any(|t| t.invariant && t.fails > 0);
    let undecided = tallies.iter().any(|t| t.invariant && t.inconclusive > 0);
    let verdict = if failed {
        SurveyVerdict::Failed
    } else if undecided {
        SurveyVerdict::Inconclusive
    } else {
        SurveyVerdict::Passed
    };
    SurveyReport {
        survey: survey.to_string(),
        context,
        signature,
        max_order,
        instances,
        verdict,
        tallies,
        counterexamples,
        notes,
        wall_ms: started.elapsed().as_millis() as u64,
    }
}

/// Every surjection between class representatives inside the bound,
/// smaller sources first.
fn surjections_up_to<A: Enumerable>(bound: usize) -> Vec<Morphism<A>> {
    let mut out = Vec::new();
    for source_order in 1..=bound {
        for a in A::classes_up_to_iso(source_order).iter() {
            for target_order in 1..=source_order {
                for b in A::classes_up_to_iso(target_order).iter() {
                    out.extend(enumerate_surjections(a, b));
                }
            }
        }
    }
    out
}

/// One line naming a monoid morphism by endpoints and images.
fn hom_line(f: &Morphism<FiniteMonoid>) -> String {
    let digits: Vec<String> = f.map().iter().map(|v| v.to_string()).collect();
    format!(
        "{} -> {} [{}]",
        f.source().label(),
        f.target().label(),
        digits.join(" ")
    )
}

/// Like [`hom_line`] for any signature, naming objects by size only.
fn hom_digits<A: Algebra>(f: &Morphism<A>) -> String {
    let digits: Vec<String> = f.map().iter().map(|v| v.to_string()).collect();
    format!(
        "{}({}) -> {}({}) [{}]",
        A::SIGNATURE,
        f.source().size(),
        A::SIGNATURE,
        f.target().size(),
        digits.join(" ")
    )
}

/// Runs the named survey in the given context.
pub fn run_survey(
    name: &str,
    id: ContextId,
    options: &SurveyOptions,
) -> Result<SurveyReport, SurveyError> {
    if !SURVEY_NAMES.contains(&name) {
        return Err(SurveyError::UnknownSurvey(name.to_string()));
    }
    match (name, id) {
        ("schreier-homogeneous", ContextId::MonGp | ContextId::MonAb) => {
            Ok(schreier_survey(id, options))
        }
        ("trivial-vs-special-homogeneous", ContextId::MonGp) => Ok(trivial_vs_special(options)),
        ("normal-central-equivalence", ContextId::MonGp) => Ok(normal_central(options)),
        ("gamma-ab-prop66", ContextId::MonAb) => Ok(gamma_ab(options)),
        ("ab-product-lemma", ContextId::MonAb) => Ok(ab_product(options)),
        ("g7-closure", ContextId::MonGp | ContextId::MonAb) => Ok(g7_closure(id, options)),
        ("norm-universal", ContextId::MonGp | ContextId::MonAb) => {
            Ok(norm_universal(id, options))
        }
        ("reflector-preserves-pullbacks", _) => Ok(pullback_preservation(id, options)),
        _ => Err(SurveyError::UnsupportedContext {
            survey: name.to_string(),
            context: id.code(),
        }),
    }
}

/// Whether a point admits a kernel decomposition exactly when its kernel
/// reaches every fiber by right translation.
fn schreier_survey(id: ContextId, options: &SurveyOptions) -> SurveyReport {
    let started = Instant::now();
    let bound = options.max_order.unwrap_or(DEFAULT_CHEAP_ORDER);
    let mut points = Vec::new();
    for f in surjections_up_to::<FiniteMonoid>(bound) {
        for s in sections_of(&f) {
            points.push(Point::new(f.clone(), s).expect("enumerated sections split their epi"));
        }
    }
    let tallies = vec![
        PropertyTally::measured("schreier"),
        PropertyTally::measured("right-homogeneous"),
        PropertyTally::measured("homogeneous-both-sides"),
        PropertyTally::required("schreier-iff-right-homogeneous"),
    ];
    let rows = map_rows(options.parallel, &points, |p| {
        let schreier = is_schreier_point(p);
        let right = check_homogeneous(p, Side::Right).is_ok();
        let both = right && check_homogeneous(p, Side::Left).is_ok();
        let agree = schreier == right;
        let outcomes = vec![
            Outcome::of(schreier),
            Outcome::of(right),
            Outcome::of(both),
            Outcome::of(agree),
        ];
        if agree {
            Row::new(outcomes)
        } else {
            Row::flagged(
                outcomes,
                format!(
                    "point {} split by {} separates the kernel decomposition from right translation",
                    hom_line(p.epi()),
                    hom_line(p.section())
                ),
            )
        }
    });
    assemble(
        "schreier-homogeneous",
        id.code(),
        FiniteMonoid::SIGNATURE,
        bound,
        tallies,
        rows,
        Vec::new(),
        started,
    )
}

/// Whether a split epimorphism is a trivial extension exactly when it is
/// special homogeneous, over the group context.
fn trivial_vs_special(options: &SurveyOptions) -> SurveyReport {
    let started = Instant::now();
    let bound = options.max_order.unwrap_or(DEFAULT_SWEEP_ORDER);
    let ctx = monoid_context(ContextId::MonGp, options.group_bound)
        .expect("the group context exists over monoids");
    let epis: Vec<Morphism<FiniteMonoid>> = surjections_up_to(bound)
        .into_iter()
        .filter(|f| !sections_of(f).is_empty())
        .collect();
    let tallies = vec![
        PropertyTally::measured("trivial-extension"),
        PropertyTally::measured("special-homogeneous"),
        PropertyTally::required("trivial-iff-special-homogeneous"),
    ];
    let rows = map_rows(options.parallel, &epis, |f| {
        let homogeneous = is_special_homogeneous(f);
        match is_trivial_extension(ctx.as_ref(), f) {
            Err(_) => Row::new(vec![
                Outcome::Inconclusive,
                Outcome::of(homogeneous),
                Outcome::Inconclusive,
            ]),
            Ok(v) => {
                let agree = v.holds == homogeneous;
                let outcomes = vec![
                    Outcome::of(v.holds),
                    Outcome::of(homogeneous),
                    Outcome::of(agree),
                ];
                if agree {
                    Row::new(outcomes)
                } else {
                    Row::flagged(
                        outcomes,
                        format!(
                            "split epimorphism {} is {} but {}",
                            hom_line(f),
                            if v.holds { "trivial" } else { "not trivial" },
                            if homogeneous {
                                "special homogeneous"
                            } else {
                                "not special homogeneous"
                            }
                        ),
                    )
                }
            }
        }
    });
    assemble(
        "trivial-vs-special-homogeneous",
        ContextId::MonGp.code(),
        FiniteMonoid::SIGNATURE,
        bound,
        tallies,
        rows,
        Vec::new(),
        started,
    )
}

/// Whether normality, centrality, and the witness search tell one story
/// over the group context.
fn normal_central(options: &SurveyOptions) -> SurveyReport {
    let started = Instant::now();
    let bound = options.max_order.unwrap_or(DEFAULT_SWEEP_ORDER);
    let ctx = monoid_context(ContextId::MonGp, options.group_bound)
        .expect("the group context exists over monoids");
    let extensions = surjections_up_to::<FiniteMonoid>(bound);
    let tallies = vec![
        PropertyTally::measured("normal"),
        PropertyTally::measured("central"),
        PropertyTally::measured("special-homogeneous"),
        PropertyTally::required("normal-iff-central"),
        PropertyTally::required("witness-track-consistent"),
    ];
    let rows = map_rows(options.parallel, &extensions, |f| {
        let normal = is_normal_extension(ctx.as_ref(), f);
        let central = is_central_extension(ctx.as_ref(), f);
        let homogeneous = is_special_homogeneous(f);
        let witness = central_witness_search(ctx.as_ref(), f, WITNESS_ORDER_BOUND);
        let equivalence = match (&normal, &central) {
            (Ok(n), Ok(c)) => Outcome::of(n.holds == c.holds),
            _ => Outcome::Inconclusive,
        };
        let witness_consistent = match (&witness, &central) {
            (Err(_), _) | (_, Err(_)) => Outcome::Inconclusive,
            (Ok(w), Ok(c)) => {
                if w.found() {
                    Outcome::of(c.holds)
                } else if !c.holds {
                    Outcome::Holds
                } else if w.inconclusive_candidates > 0 {
                    Outcome::Inconclusive
                } else {
                    Outcome::Fails
                }
            }
        };
        let outcomes = vec![
            verdict_outcome(&normal),
            verdict_outcome(&central),
            Outcome::of(homogeneous),
            equivalence,
            witness_consistent,
        ];
        if outcomes[3] == Outcome::Fails || outcomes[4] == Outcome::Fails {
            Row::flagged(
                outcomes,
                format!(
                    "extension {} splits the normal, central, and witness readings",
                    hom_line(f)
                ),
            )
        } else {
            Row::new(outcomes)
        }
    });
    assemble(
        "normal-central-equivalence",
        ContextId::MonGp.code(),
        FiniteMonoid::SIGNATURE,
        bound,
        tallies,
        rows,
        Vec::new(),
        started,
    )
}

/// Whether the intrinsic normality route matches the reflector routes over
/// the abelianization context.
fn gamma_ab(options: &SurveyOptions) -> SurveyReport {
    let started = Instant::now();
    let bound = options.max_order.unwrap_or(DEFAULT_SWEEP_ORDER);
    let ctx = monoid_context(ContextId::MonAb, options.group_bound)
        .expect("the abelianization context exists over monoids");
    let extensions = surjections_up_to::<FiniteMonoid>(bound);
    let tallies = vec![
        PropertyTally::measured("intrinsic-normal"),
        PropertyTally::measured("normal"),
        PropertyTally::measured("central"),
        PropertyTally::required("intrinsic-iff-normal"),
        PropertyTally::required("normal-iff-central"),
    ];
    let rows = map_rows(options.parallel, &extensions, |f| {
        let intrinsic = classify_gamma_ab_normal(f).holds;
        let normal = is_normal_extension(ctx.as_ref(), f);
        let central = is_central_extension(ctx.as_ref(), f);
        let intrinsic_normal = match &normal {
            Ok(n) => Outcome::of(n.holds == intrinsic),
            Err(_) => Outcome::Inconclusive,
        };
        let normal_central = match (&normal, &central) {
            (Ok(n), Ok(c)) => Outcome::of(n.holds == c.holds),
            _ => Outcome::Inconclusive,
        };
        let outcomes = vec![
            Outcome::of(intrinsic),
            verdict_outcome(&normal),
            verdict_outcome(&central),
            intrinsic_normal,
            normal_central,
        ];
        if outcomes[3] == Outcome::Fails || outcomes[4] == Outcome::Fails {
            Row::flagged(
                outcomes,
                format!("extension {} splits the normality routes", hom_line(f)),
            )
        } else {
            Row::new(outcomes)
        }
    });
    assemble(
        "gamma-ab-prop66",
        ContextId::MonAb.code(),
        FiniteMonoid::SIGNATURE,
        bound,
        tallies,
        rows,
        Vec::new(),
        started,
    )
}

/// Hand built factors filling orders the exhaustive enumeration does not
/// reach: cyclic groups, truncated lines, and mixed products.
fn constructed_factors(from: usize, to: usize) -> Vec<Arc<FiniteMonoid>> {
    let mut out = Vec::new();
    for order in from..=to {
        out.push(samples::z(order));
        out.push(Arc::new(samples::truncated_cyclic(1, order - 1)));
        out.push(Arc::new(samples::truncated_cyclic(order - 2, 2)));
        if order % 2 == 0 {
            out.push(samples::direct(&samples::b2(), &samples::z(order / 2)));
            out.push(samples::direct(
                &samples::z(2),
                &Arc::new(samples::truncated_cyclic(1, order / 2 - 1)),
            ));
        }
    }
    out
}

/// Whether abelianization distributes over products with an abelian group
/// factor, read off the canonical comparison morphism.
fn ab_product(options: &SurveyOptions) -> SurveyReport {
    let started = Instant::now();
    let bound = options.max_order.unwrap_or(DEFAULT_PRODUCT_ORDER);
    let mut pairs: Vec<(Arc<FiniteMonoid>, Arc<FiniteMonoid>)> = Vec::new();
    let mut sampled = false;
    for group_order in 1..=bound {
        for n in abelian_group_classes(group_order) {
            let factor_limit = bound / group_order;
            for factor_order in 1..=factor_limit.min(ENUMERATION_WALL) {
                for b in FiniteMonoid::classes_up_to_iso(factor_order).iter() {
                    pairs.push((n.clone(), b.clone()));
                }
            }
            if factor_limit > ENUMERATION_WALL {
                sampled = true;
                for b in constructed_factors(ENUMERATION_WALL + 1, factor_limit) {
                    pairs.push((n.clone(), b));
                }
            }
        }
    }
    let notes = if sampled {
        vec![format!(
            "factors of order above {ENUMERATION_WALL} are constructed samples, not an exhaustive enumeration"
        )]
    } else {
        Vec::new()
    };
    let tallies = vec![PropertyTally::required("comparison-iso")];
    let rows = map_rows(options.parallel, &pairs, |(n, b)| {
        let span = product(n, b);
        let (_, whole_unit) = abelianize(&span.apex);
        let (part, part_unit) = abelianize(b);
        let target = product(n, &part);
        let legs = pair_into(&target, &span.left, &compose(&part_unit, &span.right));
        match factor_through(&whole_unit, &legs) {
            Ok(comparison) if comparison.is_bijective() => Row::new(vec![Outcome::Holds]),
            Ok(_) => Row::flagged(
                vec![Outcome::Fails],
                format!(
                    "the comparison out of ab({} x {}) is not bijective",
                    n.label(),
                    b.label()
                ),
            ),
            Err(_) => Row::flagged(
                vec![Outcome::Fails],
                format!(
                    "no comparison factors through the unit of ab({} x {})",
                    n.label(),
                    b.label()
                ),
            ),
        }
    });
    assemble(
        "ab-product-lemma",
        ContextId::MonAb.code(),
        FiniteMonoid::SIGNATURE,
        bound,
        tallies,
        rows,
        notes,
        started,
    )
}

fn closure_outcome<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    graph: &crate::construct::ReflexiveGraphOfArrows<A>,
) -> Outcome {
    match verify_g7_closure(ctx, graph) {
        Ok(true) => Outcome::Holds,
        Ok(false) => Outcome::Fails,
        Err(_) => Outcome::Inconclusive,
    }
}

/// Whether normality survives the induced map between quotient rows on the
/// graphs harvested from normalization runs.
fn g7_closure(id: ContextId, options: &SurveyOptions) -> SurveyReport {
    let started = Instant::now();
    let bound = options.max_order.unwrap_or(DEFAULT_SWEEP_ORDER);
    let ctx = monoid_context(id, options.group_bound).expect("monoid context ids are covered");
    let extensions = surjections_up_to::<FiniteMonoid>(bound);
    let tallies = vec![
        PropertyTally::required("closure-on-kernel-pair-rows"),
        PropertyTally::required("closure-on-trivialized-rows"),
    ];
    let rows = map_rows(options.parallel, &extensions, |f| {
        match normalize(ctx.as_ref(), f) {
            Err(_) => Row::new(vec![Outcome::Inconclusive, Outcome::Inconclusive]),
            Ok(n) => {
                let first = closure_outcome(ctx.as_ref(), &n.kernel_pair_graph());
                let second = closure_outcome(ctx.as_ref(), &n.trivialized_graph());
                let outcomes = vec![first, second];
                if first == Outcome::Fails || second == Outcome::Fails {
                    Row::flagged(
                        outcomes,
                        format!(
                            "a graph harvested from normalizing {} leaks normality",
                            hom_line(f)
                        ),
                    )
                } else {
                    Row::new(outcomes)
                }
            }
        }
    });
    assemble(
        "g7-closure",
        id.code(),
        FiniteMonoid::SIGNATURE,
        bound,
        tallies,
        rows,
        Vec::new(),
        started,
    )
}

/// Whether normalization lands on a normal extension through which every
/// comparison into a normal extension factors once.
fn norm_universal(id: ContextId, options: &SurveyOptions) -> SurveyReport {
    let started = Instant::now();
    let bound = options.max_order.unwrap_or(DEFAULT_SWEEP_ORDER);
    let ctx = monoid_context(id, options.group_bound).expect("monoid context ids are covered");
    let mut extensions = surjections_up_to::<FiniteMonoid>(bound);
    let mut notes = Vec::new();
    if id == ContextId::MonGp {
        extensions.retain(|f| f.source().is_commutative());
        notes.push("the group context sweep keeps commutative sources only".to_string());
    }
    let tallies = vec![
        PropertyTally::required("normalization-is-normal"),
        PropertyTally::required("mediators-unique"),
    ];
    let rows = map_rows(options.parallel, &extensions, |f| {
        match normalize(ctx.as_ref(), f) {
            Err(_) => Row::new(vec![Outcome::Inconclusive, Outcome::Inconclusive]),
            Ok(n) => {
                let landed = verdict_outcome(&is_normal_extension(ctx.as_ref(), &n.normalized));
                let report =
                    verify_norm_universal(ctx.as_ref(), f, &n, options.probe_order_bound);
                let unique = Outcome::of(report.passed());
                let outcomes = vec![landed, unique];
                if landed == Outcome::Fails {
                    Row::flagged(
                        outcomes,
                        format!("normalizing {} does not land on a normal extension", hom_line(f)),
                    )
                } else if unique == Outcome::Fails {
                    Row::flagged(
                        outcomes,
                        format!(
                            "normalizing {}: {}",
                            hom_line(f),
                            report
                                .failures
                                .first()
                                .map(String::as_str)
                                .unwrap_or("a mediator count is off")
                        ),
                    )
                } else {
                    Row::new(outcomes)
                }
            }
        }
    });
    assemble(
        "norm-universal",
        id.code(),
        FiniteMonoid::SIGNATURE,
        bound,
        tallies,
        rows,
        notes,
        started,
    )
}

/// Whether reflecting a pullback along a trivial extension gives the
/// pullback of the reflections, instance by instance.
fn pullback_preservation(id: ContextId, options: &SurveyOptions) -> SurveyReport {
    match id {
        ContextId::SRngRng => pullback_preservation_in(
            semiring_context(id).expect("the ring context exists over semirings"),
            id,
            options,
        ),
        _ => pullback_preservation_in(
            monoid_context(id, options.group_bound).expect("monoid context ids are covered"),
            id,
            options,
        ),
    }
}

fn pullback_preservation_in<A: Enumerable>(
    ctx: Box<dyn GaloisContext<A>>,
    id: ContextId,
    options: &SurveyOptions,
) -> SurveyReport {
    let started = Instant::now();
    let bound = options.max_order.unwrap_or(DEFAULT_SWEEP_ORDER);
    let mut cospans: Vec<(Morphism<A>, Morphism<A>)> = Vec::new();
    let mut skipped = 0usize;
    for base_order in 1..=bound {
        for c in A::classes_up_to_iso(base_order).iter() {
            // The right legs are the trivial extensions onto this base; the
            // left legs range over every morphism into it.
            let mut trivial_legs = Vec::new();
            for source_order in base_order..=bound {
                for b in A::classes_up_to_iso(source_order).iter() {
                    for g in enumerate_surjections(b, c) {
                        match is_trivial_extension(ctx.as_ref(), &g) {
                            Ok(v) if v.holds => trivial_legs.push(g),
                            Ok(_) => {}
                            Err(_) => skipped += 1,
                        }
                    }
                }
            }
            if trivial_legs.is_empty() {
                continue;
            }
            for other_order in 1..=bound {
                for a in A::classes_up_to_iso(other_order).iter() {
                    for f in enumerate_homs(a, c) {
                        for g in &trivial_legs {
                            cospans.push((f.clone(), g.clone()));
                        }
                    }
                }
            }
        }
    }
    let notes = if skipped > 0 {
        vec![format!(
            "{skipped} candidate trivial legs were inconclusive and are not surveyed"
        )]
    } else {
        Vec::new()
    };
    let tallies = vec![PropertyTally::required("pullback-preserved")];
    let rows = map_rows(options.parallel, &cospans, |(f, g)| {
        match reflector_preserves_pullback(ctx.as_ref(), f, g) {
            Ok(true) => Row::new(vec![Outcome::Holds]),
            Ok(false) => Row::flagged(
                vec![Outcome::Fails],
                format!(
                    "the pullback of {} along {} is not preserved",
                    hom_digits(f),
                    hom_digits(g)
                ),
            ),
            Err(_) => Row::new(vec![Outcome::Inconclusive]),
        }
    });
    assemble(
        "reflector-preserves-pullbacks",
        id.code(),
        A::SIGNATURE,
        bound,
        tallies,
        rows,
        notes,
        started,
    )
}
