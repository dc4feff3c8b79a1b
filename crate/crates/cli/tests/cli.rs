//! End-to-end runs of the `galoiskit` binary over on-disk fixtures.
//!
//! Every test spawns the real executable and checks the documented exit
//! codes: 0 for success and true verdicts, 1 for validation failures and
//! false verdicts, 2 for inconclusive results, 3 for usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use galoiskit::io;
use galoiskit::samples;
use galoiskit::Morphism;

/// Scratch directory for one test, removed on drop. Tags keep the tests
/// out of each other's way when the harness runs them on threads.
struct Scratch {
    dir: PathBuf,
}

impl Scratch {
    fn new(tag: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("galoiskit-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).expect("scratch dir");
        Scratch { dir }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.join(name);
        fs::write(&path, text).expect("fixture write");
        path
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.dir);
    }
}

fn galoiskit(args: &[&str]) -> Output {
    galoiskit_with(args, &[])
}

fn galoiskit_with(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_galoiskit"));
    cmd.args(args);
    // The ambient environment must not leak a bound into the tests.
    cmd.env_remove("GALOISKIT_MAX_GROUP_BOUND");
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn path_str(path: &PathBuf) -> &str {
    path.to_str().expect("utf8 path")
}

/// The collapse of the two-element idempotent monoid onto the point,
/// with both endpoint files beside the hom file.
fn collapse_fixture(sc: &Scratch) -> PathBuf {
    sc.file("b2.mon", &io::print_monoid(&samples::b2()));
    sc.file("one.mon", &io::print_monoid(&samples::trivial()));
    let f = Morphism::new(samples::b2(), samples::trivial(), vec![0, 0]).unwrap();
    sc.file("collapse.hom", &io::print_hom("b2", "one", &f))
}

#[test]
fn validate_accepts_a_monoid_and_reports_its_size() {
    let sc = Scratch::new("validate-ok");
    let path = sc.file("z2.mon", &io::print_monoid(&samples::z(2)));
    let out = galoiskit(&["validate", path_str(&path)]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("ok: monoid (2 elements)"));
}

#[test]
fn validate_points_at_the_offending_token() {
    let sc = Scratch::new("validate-short-row");
    let path = sc.file("short.mon", "monoid 2 0\n0\n1 0\n");
    let out = galoiskit(&["validate", path_str(&path)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));
}

#[test]
fn validate_reports_broken_laws_at_the_header() {
    let sc = Scratch::new("validate-law");
    let path = sc.file("skew.mon", "monoid 2 0\n0 1\n0 1\n");
    let out = galoiskit(&["validate", path_str(&path)]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("line 1, column 1"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn validate_resolves_hom_endpoints_from_sibling_files() {
    let sc = Scratch::new("validate-hom");
    let path = collapse_fixture(&sc);
    let out = galoiskit(&["validate", path_str(&path)]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("hom"));
}

#[test]
fn missing_endpoint_files_are_data_errors() {
    let sc = Scratch::new("validate-orphan");
    let path = sc.file("orphan.hom", "hom ghost one\n0 0\n");
    sc.file("one.mon", &io::print_monoid(&samples::trivial()));
    let out = galoiskit(&["validate", path_str(&path)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("ghost.mon"), "stderr: {}", stderr(&out));
}

#[test]
fn a_collapsed_idempotent_fails_special_homogeneity_with_a_witness() {
    let sc = Scratch::new("classify-special");
    let path = collapse_fixture(&sc);
    let out = galoiskit(&[
        "classify",
        "--ctx",
        "mon-gp",
        "--property",
        "special-homogeneous",
        path_str(&path),
    ]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: false"), "stdout: {text}");
    assert!(text.contains("witness:"), "stdout: {text}");
}

#[test]
fn an_isomorphism_is_a_trivial_extension() {
    let sc = Scratch::new("classify-trivial");
    sc.file("z2.mon", &io::print_monoid(&samples::z(2)));
    sc.file("z2copy.mon", &io::print_monoid(&samples::z(2)));
    let f = Morphism::new(samples::z(2), samples::z(2), vec![0, 1]).unwrap();
    let path = sc.file("id.hom", &io::print_hom("z2", "z2copy", &f));
    let out = galoiskit(&[
        "classify",
        "--ctx",
        "mon-ab",
        "--property",
        "trivial",
        path_str(&path),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("verdict: true"));
}

#[test]
fn reflective_properties_demand_a_context() {
    let sc = Scratch::new("classify-no-ctx");
    let path = collapse_fixture(&sc);
    let out = galoiskit(&["classify", "--property", "normal", path_str(&path)]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("--ctx"), "stderr: {}", stderr(&out));
}

#[test]
fn point_properties_sweep_every_section() {
    let sc = Scratch::new("classify-schreier");
    sc.file("z2.mon", &io::print_monoid(&samples::z(2)));
    sc.file("one.mon", &io::print_monoid(&samples::trivial()));
    let f = Morphism::new(samples::z(2), samples::trivial(), vec![0, 0]).unwrap();
    let path = sc.file("squash.hom", &io::print_hom("z2", "one", &f));
    let out = galoiskit(&["classify", "--property", "schreier", path_str(&path)]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: true"), "stdout: {text}");
    assert!(text.contains("section [0]"), "stdout: {text}");
}

#[test]
fn square_projection_triviality_separates_groups_from_idempotents() {
    let sc = Scratch::new("classify-s-special");
    let z2 = sc.file("z2.mon", &io::print_monoid(&samples::z(2)));
    let b2 = sc.file("b2.mon", &io::print_monoid(&samples::b2()));
    let good = galoiskit(&[
        "classify",
        "--ctx",
        "mon-ab",
        "--property",
        "s-special",
        path_str(&z2),
    ]);
    assert_eq!(code(&good), 0, "stderr: {}", stderr(&good));
    assert!(stdout(&good).contains("verdict: true"));
    let bad = galoiskit(&[
        "classify",
        "--ctx",
        "mon-ab",
        "--property",
        "s-special",
        path_str(&b2),
    ]);
    assert_eq!(code(&bad), 1, "stderr: {}", stderr(&bad));
    assert!(stdout(&bad).contains("verdict: false"));
}

#[test]
fn completion_output_is_itself_a_valid_input() {
    let sc = Scratch::new("complete-roundtrip");
    let tc = Arc::new(samples::truncated_cyclic(1, 2));
    let path = sc.file("tc.mon", &io::print_monoid(&tc));
    let out = galoiskit(&["complete", path_str(&path)]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("monoid 2 0"), "stdout: {text}");
    let back = sc.file("completed.mon", &text);
    let check = galoiskit(&["validate", path_str(&back)]);
    assert_eq!(code(&check), 0, "stderr: {}", stderr(&check));
}

#[test]
fn a_tight_group_bound_is_reported_as_inconclusive() {
    // Commutative inputs complete through congruences and never need the
    // room, so only a non-commutative input can exercise the bound.
    let sc = Scratch::new("complete-bound");
    let path = sc.file("lz2.mon", &io::print_monoid(&samples::lz2()));
    let out = galoiskit_with(
        &["complete", path_str(&path)],
        &[("GALOISKIT_MAX_GROUP_BOUND", "1")],
    );
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    assert!(
        stderr(&out).contains("inconclusive"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn the_group_bound_variable_is_validated() {
    let sc = Scratch::new("complete-bad-bound");
    let path = sc.file("z2.mon", &io::print_monoid(&samples::z(2)));
    for bad in ["abc", "0"] {
        let out = galoiskit_with(
            &["complete", path_str(&path)],
            &[("GALOISKIT_MAX_GROUP_BOUND", bad)],
        );
        assert_eq!(code(&out), 3, "bound {bad:?}: {}", stderr(&out));
        assert!(stderr(&out).contains("GALOISKIT_MAX_GROUP_BOUND"));
    }
}

#[test]
fn ring_completion_collapses_the_boolean_rig() {
    let sc = Scratch::new("ring-complete");
    let path = sc.file("bool.srng", &io::print_semiring(&samples::bool_rig()));
    let out = galoiskit(&["ring-complete", path_str(&path)]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("semiring 1"), "stdout: {}", stdout(&out));
}

#[test]
fn normalization_reports_the_unit_and_the_landing() {
    let sc = Scratch::new("normalize");
    let path = collapse_fixture(&sc);
    let out = galoiskit(&["normalize", "--ctx", "mon-ab", path_str(&path)]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("unit:"), "stdout: {text}");
    assert!(text.contains("normal: true"), "stdout: {text}");
}

#[test]
fn normalization_rejects_non_surjective_maps() {
    let sc = Scratch::new("normalize-non-epi");
    sc.file("one.mon", &io::print_monoid(&samples::trivial()));
    sc.file("z2.mon", &io::print_monoid(&samples::z(2)));
    let f = Morphism::new(samples::trivial(), samples::z(2), vec![0]).unwrap();
    let path = sc.file("into.hom", &io::print_hom("one", "z2", &f));
    let out = galoiskit(&["normalize", "--ctx", "mon-ab", path_str(&path)]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("surjections"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn surveys_exit_by_their_verdict() {
    let out = galoiskit(&[
        "survey",
        "gamma-ab-prop66",
        "--ctx",
        "mon-ab",
        "--max-order",
        "2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: passed"), "stdout: {text}");
    assert!(text.contains("intrinsic-iff-normal"), "stdout: {text}");
}

#[test]
fn unknown_surveys_and_unsupported_contexts_are_usage_errors() {
    let unknown = galoiskit(&["survey", "nonsense", "--ctx", "mon-ab"]);
    assert_eq!(code(&unknown), 3);
    let unsupported = galoiskit(&["survey", "gamma-ab-prop66", "--ctx", "srng-rng"]);
    assert_eq!(code(&unsupported), 3);
    assert!(
        stderr(&unsupported).contains("srng-rng"),
        "stderr: {}",
        stderr(&unsupported)
    );
}

#[test]
fn json_survey_reports_are_machine_readable() {
    let out = galoiskit(&[
        "--json",
        "survey",
        "g7-closure",
        "--ctx",
        "mon-ab",
        "--max-order",
        "2",
        "--sequential",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json parses");
    assert_eq!(value["survey"], "g7-closure");
    assert_eq!(value["verdict"], "passed");
    assert!(value["tallies"].is_array());
    assert!(value["wall_ms"].is_number());
}

#[test]
fn json_classification_carries_the_verdict() {
    let sc = Scratch::new("classify-json");
    let path = collapse_fixture(&sc);
    let out = galoiskit(&[
        "--json",
        "classify",
        "--ctx",
        "mon-gp",
        "--property",
        "central",
        path_str(&path),
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json parses");
    assert_eq!(value["property"], "central");
    assert!(value["verdict"].is_string());
}

#[test]
fn enumeration_counts_classes_through_the_requested_order() {
    let out = galoiskit(&["enumerate", "--max-order", "2"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(
        stdout(&out).contains("monoid classes through order 2: 3"),
        "stdout: {}",
        stdout(&out)
    );
    let rigs = galoiskit(&["enumerate", "--signature", "semiring", "--max-order", "2"]);
    assert_eq!(code(&rigs), 0, "stderr: {}", stderr(&rigs));
    assert!(
        stdout(&rigs).contains("semiring classes through order 2:"),
        "stdout: {}",
        stdout(&rigs)
    );
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = galoiskit(&["--bogus"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn help_prints_and_succeeds() {
    let out = galoiskit(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("survey"), "stdout: {}", stdout(&out));
}
