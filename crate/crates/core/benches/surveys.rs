//! Survey throughput with the worker pool on and off.
//!
//! Every survey is a map over an instance list, so the interesting
//! comparison is the same sweep with `parallel` toggled. The enumeration
//! caches warm up during the first iterations and stay warm, which keeps
//! the comparison about the mapping strategy rather than the enumerator.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use galoiskit::survey::{run_survey, SurveyOptions};
use galoiskit::ContextId;

fn options(max_order: usize, parallel: bool) -> SurveyOptions {
    SurveyOptions {
        max_order: Some(max_order),
        parallel,
        ..SurveyOptions::default()
    }
}

fn bench_sweep(
    c: &mut Criterion,
    group_name: &str,
    survey: &str,
    ctx: ContextId,
    max_order: usize,
    samples: usize,
) {
    let mut group = c.benchmark_group(group_name);
    group.sample_size(samples);
    for (label, parallel) in [("parallel", true), ("sequential", false)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &parallel, |b, &on| {
            b.iter(|| run_survey(survey, ctx, &options(max_order, on)).unwrap())
        });
    }
    group.finish();
}

fn section_sweep(c: &mut Criterion) {
    bench_sweep(
        c,
        "schreier-homogeneous order 4",
        "schreier-homogeneous",
        ContextId::MonGp,
        4,
        30,
    );
}

fn normality_sweep(c: &mut Criterion) {
    bench_sweep(
        c,
        "gamma-ab-prop66 order 3",
        "gamma-ab-prop66",
        ContextId::MonAb,
        3,
        50,
    );
}

fn normalization_sweep(c: &mut Criterion) {
    bench_sweep(
        c,
        "norm-universal order 3",
        "norm-universal",
        ContextId::MonAb,
        3,
        20,
    );
}

criterion_group!(
    surveys,
    section_sweep,
    normality_sweep,
    normalization_sweep
);
criterion_main!(surveys);
