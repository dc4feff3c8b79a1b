//! Normalization of extensions.
//!
//! Every surjection sits over a best normal approximation. The kernel pair
//! of the extension is trivialized relative to a context, the second-level
//! kernel pair is transported onto the trivialization, and the coequalizer
//! of the transported pair collapses the trivialized object onto the
//! normalization. The original extension factors through it, and for an
//! extension that is already normal the collapse does nothing.

use std::sync::Arc;

use crate::algebra::{compose, identity, Algebra, Morphism};
use crate::classify::is_normal_extension;
use crate::complete::{GaloisContext, Inconclusive, ReflectedMorphism};
use crate::construct::{
    coequalizer_of_reflexive_pair, factor_through, kernel_pair, pair_into, pullback,
    Coequalizer, KernelPair, ReflexiveGraphOfArrows, SpanObject,
};
use crate::enumerate::{enumerate_homs, enumerate_surjections, Enumerable};

/// A surjection rebuilt as a trivial extension over the same base.
#[derive(Debug, Clone)]
pub struct TrivializationResult<A: Algebra> {
    /// The surjection that was trivialized.
    pub fibration: Morphism<A>,
    /// The closest trivial extension over the base.
    pub trivialized: Morphism<A>,
    /// The comparison from the original total object. Bijective exactly
    /// when the fibration was already trivial.
    pub unit_comparison: Morphism<A>,
    /// The defining span. The left leg is `trivialized`; the right leg
    /// projects onto the reflected total object.
    pub span: SpanObject<A>,
    /// The reflection of the fibration that the span pulls back.
    pub reflected: ReflectedMorphism<A>,
}

/// Pulls the reflected morphism back along the base unit, producing the
/// trivial extension closest to `f` together with the comparison into it.
///
/// The factorization `trivialized . unit_comparison = f` always holds and
/// the trivialized leg is again surjective.
pub fn trivialize_over<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    f: &Morphism<A>,
) -> Result<TrivializationResult<A>, Inconclusive> {
    assert!(f.is_surjective(), "only extensions can be trivialized");
    let reflected = ctx.apply_to(f)?;
    let span = pullback(&reflected.target.unit, &reflected.map);
    let unit_comparison = pair_into(&span, f, &reflected.source.unit);
    let trivialized = span.left.clone();
    debug_assert_eq!(compose(&trivialized, &unit_comparison), *f);
    debug_assert!(trivialized.is_surjective());
    Ok(TrivializationResult {
        fibration: f.clone(),
        trivialized,
        unit_comparison,
        span,
        reflected,
    })
}

/// Carries one trivialization into another along a commuting square.
///
/// `top` maps the total objects and `base` maps the bases, with
/// `to.fibration . top = base . from.fibration`. The transported morphism
/// acts by `base` on the base coordinate and by the reflection of `top`
/// on the fiber coordinate.
pub fn transport<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    top: &Morphism<A>,
    base: &Morphism<A>,
    from: &TrivializationResult<A>,
    to: &TrivializationResult<A>,
) -> Result<Morphism<A>, Inconclusive> {
    assert_eq!(
        compose(&to.fibration, top),
        compose(base, &from.fibration),
        "transport requires a commuting square between the fibrations"
    );
    let reflected_top = ctx.apply_to(top)?;
    Ok(pair_into(
        &to.span,
        &compose(base, &from.span.left),
        &compose(&reflected_top.map, &from.span.right),
    ))
}

/// The normalization of an extension, with the whole diagram it was read
/// off from.
#[derive(Debug, Clone)]
pub struct NormalizationResult<A: Algebra> {
    /// The normalized extension over the original base.
    pub normalized: Morphism<A>,
    /// The comparison from the original total object into the normalized
    /// one. Composing `normalized` after it recovers the input.
    pub unit: Morphism<A>,
    /// The kernel pair of the input extension.
    pub kernel_pair: KernelPair<A>,
    /// The kernel pair of the second projection.
    pub second_kernel_pair: KernelPair<A>,
    /// The pairing of both second-level first projections, a surjection
    /// from the second level onto the first.
    pub induced_projection: Morphism<A>,
    /// Trivialization of the first projection, over the original total
    /// object.
    pub over_source: TrivializationResult<A>,
    /// Trivialization of the induced projection, over the kernel pair.
    pub over_kernel_pair: TrivializationResult<A>,
    /// The second-level pair carried onto the trivializations.
    pub transported_pair: (Morphism<A>, Morphism<A>),
    /// The common section of the transported pair.
    pub transported_section: Morphism<A>,
    /// The coequalizer of the transported pair. Its object carries the
    /// normalization.
    pub coequalizer: Coequalizer<A>,
}

impl<A: Algebra> NormalizationResult<A> {
    /// The original total object.
    pub fn source(&self) -> &Arc<A> {
        self.unit.source()
    }

    /// The normalized total object.
    pub fn object(&self) -> &Arc<A> {
        self.unit.target()
    }

    /// The common base.
    pub fn base(&self) -> &Arc<A> {
        self.normalized.target()
    }

    /// The graph formed by both kernel-pair levels, with the raw first
    /// projections as the vertical maps.
    pub fn kernel_pair_graph(&self) -> ReflexiveGraphOfArrows<A> {
        ReflexiveGraphOfArrows::new(
            (
                self.second_kernel_pair.span.left.clone(),
                self.second_kernel_pair.span.right.clone(),
            ),
            self.second_kernel_pair.diagonal.clone(),
            (
                self.kernel_pair.span.left.clone(),
                self.kernel_pair.span.right.clone(),
            ),
            self.kernel_pair.diagonal.clone(),
            self.induced_projection.clone(),
            self.kernel_pair.span.left.clone(),
        )
        .expect("the kernel pair levels commute by construction")
    }

    /// The graph carrying the transported pair over the two trivialized
    /// vertical maps.
    pub fn trivialized_graph(&self) -> ReflexiveGraphOfArrows<A> {
        ReflexiveGraphOfArrows::new(
            (
                self.transported_pair.0.clone(),
                self.transported_pair.1.clone(),
            ),
            self.transported_section.clone(),
            (
                self.kernel_pair.span.left.clone(),
                self.kernel_pair.span.right.clone(),
            ),
            self.kernel_pair.diagonal.clone(),
            self.over_kernel_pair.trivialized.clone(),
            self.over_source.trivialized.clone(),
        )
        .expect("the transported pair rides the trivializations by construction")
    }
}

/// Computes the normalization of an extension relative to a context.
///
/// The stages: take the kernel pair of `f` and the kernel pair of its
/// second projection, trivialize the first projections of both levels,
/// transport the second-level pair and its diagonal onto the
/// trivializations, coequalize the transported pair, and factor `f`
/// through the quotient. A reflection that runs out of room aborts the
/// whole computation; no partial answer is produced.
pub fn normalize<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    f: &Morphism<A>,
) -> Result<NormalizationResult<A>, Inconclusive> {
    assert!(f.is_surjective(), "only extensions can be normalized");
    let kp = kernel_pair(f);
    let second = kernel_pair(&kp.span.right);
    let induced_projection = pair_into(
        &kp.span,
        &compose(&kp.span.left, &second.span.left),
        &compose(&kp.span.left, &second.span.right),
    );
    let over_source = trivialize_over(ctx, &kp.span.left)?;
    let over_kernel_pair = trivialize_over(ctx, &induced_projection)?;
    let d1 = transport(
        ctx,
        &second.span.left,
        &kp.span.left,
        &over_kernel_pair,
        &over_source,
    )?;
    let d2 = transport(
        ctx,
        &second.span.right,
        &kp.span.right,
        &over_kernel_pair,
        &over_source,
    )?;
    let transported_section = transport(
        ctx,
        &second.diagonal,
        &kp.diagonal,
        &over_source,
        &over_kernel_pair,
    )?;
    debug_assert_eq!(compose(&d1, &transported_section), identity(d1.target()));
    debug_assert_eq!(compose(&d2, &transported_section), identity(d2.target()));
    let coequalizer = coequalizer_of_reflexive_pair(&d1, &d2);
    let normalized = factor_through(
        &coequalizer.map,
        &compose(f, &over_source.trivialized),
    )
    .expect("the base composite coequalizes the transported pair");
    let unit = compose(
        &coequalizer.map,
        &compose(&over_source.unit_comparison, &kp.diagonal),
    );
    debug_assert_eq!(compose(&normalized, &unit), *f);
    Ok(NormalizationResult {
        normalized,
        unit,
        kernel_pair: kp,
        second_kernel_pair: second,
        induced_projection,
        over_source,
        over_kernel_pair,
        transported_pair: (d1, d2),
        transported_section,
        coequalizer,
    })
}

/// Outcome of probing the universal property of a normalization against
/// the small normal extensions over the same base.
#[derive(Debug, Clone)]
pub struct UniversalityReport {
    /// Largest probe order that was examined.
    pub probe_order_bound: usize,
    /// Surjections onto the base that were considered.
    pub probes_checked: usize,
    /// Probes that were certified normal and actually exercised.
    pub normal_probes: usize,
    /// Probes skipped because their normality could not be decided.
    pub inconclusive_probes: usize,
    /// One line per comparison that did not have a unique mediating map.
    pub failures: Vec<String>,
}

impl UniversalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `result` is initial among factorizations of `f` through a
/// normal extension: every normal surjection onto the base that receives
/// a compatible comparison from the source admits exactly one mediating
/// map out of the normalized object. Probe total objects range over all
/// isomorphism classes up to the order bound.
pub fn verify_norm_universal<A: Enumerable>(
    ctx: &dyn GaloisContext<A>,
    f: &Morphism<A>,
    result: &NormalizationResult<A>,
    probe_order_bound: usize,
) -> UniversalityReport {
    assert_eq!(
        compose(&result.normalized, &result.unit),
        *f,
        "the result does not factor the given extension"
    );
    let mut report = UniversalityReport {
        probe_order_bound,
        probes_checked: 0,
        normal_probes: 0,
        inconclusive_probes: 0,
        failures: Vec::new(),
    };
    for order in 1..=probe_order_bound {
        for c in A::classes_up_to_iso(order).iter() {
            let surjections = enumerate_surjections(c, f.target());
            if surjections.is_empty() {
                continue;
            }
            let comparisons = enumerate_homs(f.source(), c);
            let mediators = enumerate_homs(result.object(), c);
            for g in surjections {
                report.probes_checked += 1;
                let verdict = match is_normal_extension(ctx, &g) {
                    Ok(verdict) => verdict,
                    Err(Inconclusive { .. }) => {
                        report.inconclusive_probes += 1;
                        continue;
                    }
                };
                if !verdict.holds {
                    continue;
                }
                report.normal_probes += 1;
                for alpha in &comparisons {
                    if compose(&g, alpha) != *f {
                        continue;
                    }
                    let matching = mediators
                        .iter()
                        .filter(|m| {
                            compose(&g, m) == result.normalized
                                && compose(m, &result.unit) == *alpha
                        })
                        .count();
                    if matching != 1 {
                        report.failures.push(format!(
                            "normal probe of order {order} admits {matching} mediating maps for one comparison"
                        ));
                    }
                }
            }
        }
    }
    report
}

/// Checks that normality is closed under quotients of reflexive graphs of
/// arrows: when both vertical maps are normal extensions, the induced map
/// between the row coequalizers must be one too. A graph whose verticals
/// are not both normal passes vacuously.
pub fn verify_g7_closure<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    graph: &ReflexiveGraphOfArrows<A>,
) -> Result<bool, Inconclusive> {
    assert!(
        graph.edge_map.is_surjective() && graph.vertex_map.is_surjective(),
        "the vertical maps must be extensions"
    );
    assert!(
        graph.bottom_row_is_kernel_pair(),
        "the bottom row must present an effective congruence"
    );
    let edge = is_normal_extension(ctx, &graph.edge_map)?;
    let vertex = is_normal_extension(ctx, &graph.vertex_map)?;
    if !(edge.holds && vertex.holds) {
        return Ok(true);
    }
    let (_, _, induced) = graph.induced_on_coequalizers();
    let verdict = is_normal_extension(ctx, &induced)?;
    Ok(verdict.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{identity, Morphism};
    use crate::complete::{ToAbelianGroups, ToGroups};
    use crate::construct::terminal_morphism;
    use crate::samples;
    use std::sync::Arc;

    fn height_onto_parity() -> Morphism<crate::algebra::FiniteMonoid> {
        let line = Arc::new(samples::truncated_cyclic(1, 2));
        Morphism::new(line, samples::z(2), vec![0, 1, 0]).unwrap()
    }

    #[test]
    fn trivializing_a_group_morphism_changes_nothing() {
        let ctx = ToGroups::default();
        let f = Morphism::new(samples::z(4), samples::z(2), vec![0, 1, 0, 1]).unwrap();
        let t = trivialize_over(&ctx, &f).unwrap();
        assert!(t.unit_comparison.is_bijective());
        assert_eq!(compose(&t.trivialized, &t.unit_comparison), f);
    }

    #[test]
    fn trivializing_the_terminal_map_of_the_join_semilattice_collapses_it() {
        let ctx = ToAbelianGroups;
        let f = terminal_morphism(&samples::b2());
        let t = trivialize_over(&ctx, &f).unwrap();
        assert_eq!(t.span.apex.size(), 1);
        assert!(t.trivialized.is_bijective());
        assert!(t.unit_comparison.is_surjective());
    }

    #[test]
    fn trivializing_a_saturated_point_lands_on_the_base() {
        // Both endpoints reflect to the trivial group, so the pulled back
        // extension is carried by the base itself.
        let ctx = ToGroups::default();
        let f = Morphism::new(samples::k3(), samples::b2(), vec![0, 1, 1]).unwrap();
        let t = trivialize_over(&ctx, &f).unwrap();
        assert_eq!(t.span.apex.size(), 2);
        assert!(t.trivialized.is_bijective());
        assert_eq!(compose(&t.trivialized, &t.unit_comparison), f);
    }

    #[test]
    fn normalizing_the_terminal_map_of_the_join_semilattice_gives_the_point() {
        let ctx = ToAbelianGroups;
        let f = terminal_morphism(&samples::b2());
        let n = normalize(&ctx, &f).unwrap();
        assert_eq!(n.object().size(), 1);
        assert!(n.normalized.is_bijective());
        assert!(n.unit.is_surjective());
    }

    #[test]
    fn normalizing_the_terminal_map_of_the_truncated_line_gives_the_point() {
        let ctx = ToGroups::default();
        let f = terminal_morphism(&samples::n3());
        let n = normalize(&ctx, &f).unwrap();
        assert_eq!(n.object().size(), 1);
        assert!(n.normalized.is_bijective());
    }

    #[test]
    fn normalizing_a_group_extension_is_the_identity_collapse() {
        let ctx = ToGroups::default();
        let f = Morphism::new(samples::z(4), samples::z(2), vec![0, 1, 0, 1]).unwrap();
        let n = normalize(&ctx, &f).unwrap();
        assert!(n.unit.is_bijective());
        assert_eq!(compose(&n.normalized, &n.unit), f);

        let id = identity(&samples::z(4));
        let n = normalize(&ctx, &id).unwrap();
        assert!(n.unit.is_bijective());
    }

    #[test]
    fn normalizing_the_height_map_collapses_the_line_to_parity() {
        // The only failure of normality in the height map is the pinch at
        // the top of the line; the collapse identifies exactly the two
        // even heights and lands on the parity group itself.
        let ctx = ToAbelianGroups;
        let f = height_onto_parity();
        let n = normalize(&ctx, &f).unwrap();
        assert_eq!(n.object().size(), 2);
        assert_eq!(n.unit.map(), &[0, 1, 0]);
        assert!(n.normalized.is_bijective());
        let verdict = is_normal_extension(&ctx, &n.normalized).unwrap();
        assert!(verdict.holds);
    }

    #[test]
    fn normalizing_the_support_map_of_the_line_lands_on_the_semilattice() {
        let ctx = ToAbelianGroups;
        let f = Morphism::new(samples::n3(), samples::b2(), vec![0, 1, 1]).unwrap();
        let n = normalize(&ctx, &f).unwrap();
        assert_eq!(n.object().size(), 2);
        assert_eq!(n.unit.map(), &[0, 1, 1]);
        assert!(n.normalized.is_bijective());
    }

    #[test]
    fn normalizing_onto_the_semilattice_pads_the_total_object() {
        // The collapse can land strictly above the image of the
        // comparison: here the normalized object grows a group coordinate
        // that the source never reaches, so the comparison is not
        // surjective, yet the result is still the universal normal
        // extension over the semilattice.
        let ctx = ToAbelianGroups;
        let line = Arc::new(samples::truncated_cyclic(1, 2));
        let f = Morphism::new(line, samples::b2(), vec![0, 1, 1]).unwrap();
        let n = normalize(&ctx, &f).unwrap();
        assert_eq!(n.object().size(), 4);
        assert!(!n.unit.is_surjective());
        let padded = samples::direct(&samples::z(2), &samples::b2());
        assert!(crate::algebra::are_isomorphic(n.object(), &padded).is_some());
        assert!(is_normal_extension(&ctx, &n.normalized).unwrap().holds);
        let report = verify_norm_universal(&ctx, &f, &n, 4);
        assert!(report.passed(), "failures: {:?}", report.failures);
    }

    #[test]
    fn normalization_is_idempotent() {
        let ctx = ToAbelianGroups;
        for f in [
            height_onto_parity(),
            Morphism::new(samples::n3(), samples::b2(), vec![0, 1, 1]).unwrap(),
        ] {
            let once = normalize(&ctx, &f).unwrap();
            let twice = normalize(&ctx, &once.normalized).unwrap();
            assert!(twice.unit.is_bijective());
        }
    }

    #[test]
    fn factorization_and_surjectivity_hold_across_small_extensions() {
        let ctx = ToAbelianGroups;
        let sources = [
            samples::n3(),
            samples::b2(),
            samples::z(4),
            Arc::new(samples::truncated_cyclic(1, 2)),
        ];
        let targets = [samples::trivial(), samples::z(2), samples::b2()];
        let mut seen = 0;
        for a in &sources {
            for b in &targets {
                for f in crate::enumerate::enumerate_surjections(a, b) {
                    let n = normalize(&ctx, &f).unwrap();
                    assert_eq!(compose(&n.normalized, &n.unit), f);
                    assert!(n.normalized.is_surjective());
                    n.kernel_pair_graph();
                    n.trivialized_graph();
                    seen += 1;
                }
            }
        }
        assert!(seen > 4);
    }

    #[test]
    fn collapsing_a_commutative_monoid_normalizes_to_its_group_completion() {
        // Over the group context the normalization of the map to the point
        // must reproduce the completion of the source, computed by the
        // wholly independent congruence route.
        let ctx = ToGroups::default();
        let mut seen = 0;
        for order in 1..=4usize {
            for a in crate::enumerate::commutative_monoids_up_to_iso(order) {
                let n = normalize(&ctx, &terminal_morphism(&a)).unwrap();
                let completed = ctx.reflect(&a).unwrap();
                assert!(
                    crate::algebra::are_isomorphic(n.object(), &completed.object).is_some(),
                    "normalization and completion disagree on {}",
                    a.label()
                );
                seen += 1;
            }
        }
        assert!(seen > 8, "only {seen} commutative monoids swept");
    }

    #[test]
    fn the_universal_property_holds_for_the_collapsed_semilattice() {
        let ctx = ToAbelianGroups;
        let f = terminal_morphism(&samples::b2());
        let n = normalize(&ctx, &f).unwrap();
        let report = verify_norm_universal(&ctx, &f, &n, 3);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.normal_probes > 0);
    }

    #[test]
    fn the_universal_property_rejects_a_padded_normalization() {
        // Swapping the collapsed object for a strictly finer normal
        // extension keeps the factorization but breaks uniqueness of the
        // mediating map, and the probe notices.
        let ctx = ToAbelianGroups;
        let f = terminal_morphism(&samples::b2());
        let mut doctored = normalize(&ctx, &f).unwrap();
        doctored.normalized = terminal_morphism(&samples::z(2));
        doctored.unit = Morphism::new(samples::b2(), samples::z(2), vec![0, 0]).unwrap();
        let report = verify_norm_universal(&ctx, &f, &doctored, 2);
        assert!(!report.passed());
    }

    #[test]
    fn closure_holds_on_graphs_harvested_from_normalization() {
        let ab = ToAbelianGroups;
        let f = height_onto_parity();
        let n = normalize(&ab, &f).unwrap();
        assert!(verify_g7_closure(&ab, &n.kernel_pair_graph()).unwrap());
        assert!(verify_g7_closure(&ab, &n.trivialized_graph()).unwrap());

        let gp = ToGroups::default();
        let f = Morphism::new(samples::z(4), samples::z(2), vec![0, 1, 0, 1]).unwrap();
        let n = normalize(&gp, &f).unwrap();
        assert!(verify_g7_closure(&gp, &n.kernel_pair_graph()).unwrap());
        assert!(verify_g7_closure(&gp, &n.trivialized_graph()).unwrap());
    }

    #[test]
    fn a_discrete_graph_passes_closure_vacuously_or_not_at_all() {
        let ctx = ToGroups::default();
        let a = samples::z(3);
        let id = identity(&a);
        let graph = ReflexiveGraphOfArrows::new(
            (id.clone(), id.clone()),
            id.clone(),
            (id.clone(), id.clone()),
            id.clone(),
            id.clone(),
            id.clone(),
        )
        .unwrap();
        assert!(verify_g7_closure(&ctx, &graph).unwrap());
    }
}
