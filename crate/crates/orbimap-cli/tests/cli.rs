//! End-to-end checks of the command-line tool: report schemas, exit codes,
//! and byte determinism.

use std::process::{Command, Output};

use orbimap_cli::reports::{
    BundleReport, ErrorReport, ExampleReport, GluedReport, GroupReport, HomsReport, IdgroupReport,
    LiftsReport, VerifyReport,
};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbimap"))
        .args(args)
        .env("ORBIMAP_SEED", "0")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("stdout is UTF-8")
}

#[test]
fn group_reports_structure() {
    let out = run(&["group", "--input", &data("flips.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report: GroupReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.dim, 3);
    assert_eq!(report.order, 4);
    assert!(report.abelian);
    assert_eq!(report.center_order, 4);
    assert_eq!(report.elements.len(), 4);
}

#[test]
fn group_accepts_inline_generator_lists() {
    let out = run(&["group", "--generators", "empty", "--dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: GroupReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.order, 1);
    assert_eq!(report.elements, vec![vec!["1", "0", "0", "1"]]);

    // A duplicated generator is counted once.
    let out = run(&["group", "--generators", &data("gens-pair.json"), "--dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: GroupReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.order, 4);
    assert_eq!(report.duplicate_generators_ignored, 1);
}

#[test]
fn homs_counts_all_homomorphisms() {
    let out = run(&["homs", "--src", &data("z2.json"), "--dst", &data("flips.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report: HomsReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.count, 4);
    assert_eq!(report.homs.len(), 4);
    assert!(report.homs.iter().all(|h| h.len() == 2));
}

#[test]
fn lifts_reports_the_two_completions() {
    let out = run(&["lifts", "--input", &data("axis-map.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report: LiftsReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.count, 2);
    assert_eq!(report.src_label, "line");
    assert_eq!(report.dst_label, "double-flips");
}

#[test]
fn strata_emits_dot_and_json() {
    let dot = run(&["strata", "--input", &data("axis-map.json"), "--format", "dot"]);
    assert_eq!(dot.status.code(), Some(0));
    let text = stdout_of(&dot);
    assert!(text.starts_with("digraph strata {"));
    assert_eq!(text.matches("->").count(), 2);

    let json = run(&["strata", "--input", &data("axis-map.json")]);
    assert_eq!(json.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&json)).unwrap();
    assert_eq!(value["ambient_dim"], 12);
    assert_eq!(value["strata"].as_array().unwrap().len(), 3);
}

#[test]
fn pullback_reports_bundle_and_glued_modes() {
    // With homomorphism data: a single bundle.
    let out = run(&["pullback", "--input", &data("line-identity-complete.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report: BundleReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.fiber_dim, 1);
    assert!(report.equivalent_to_source_tangent);
    assert_eq!(report.admissible_at_origin_dim, 0);
    assert_eq!(report.admissible_generic_dim, 1);

    let out = run(&["pullback", "--input", &data("axis-map-complete.json")]);
    let report: BundleReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.fiber_dim, 3);
    assert!(!report.equivalent_to_source_tangent);
    assert_eq!(report.admissible_at_origin_dim, 1);

    // Without homomorphism data: glued fibers over every lift subset.
    let out = run(&["pullback", "--input", &data("axis-map.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report: GluedReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.lift_count, 2);
    let dims: Vec<usize> = report.glued.iter().map(|g| g.dim).collect();
    assert_eq!(dims, vec![3, 3, 1]);
}

#[test]
fn idgroup_reports_the_exact_sequence() {
    let out = run(&["idgroup", "--input", &data("flips.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report: IdgroupReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.order, 4);
    assert_eq!(report.center_order, 4);
    assert_eq!(report.inner_order, 1);
    assert!(report.order_identity_holds);
    assert!(report.quotient_is_homomorphism);
    assert!(report.kernel_is_center);
}

#[test]
fn verify_reports_verdicts_without_failing() {
    let out = run(&["verify", "--input", &data("atlas.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerifyReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert!(report.valid);

    // Math failures are verdicts, not process errors.
    let out = run(&["verify", "--input", &data("atlas-bad.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerifyReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert!(!report.valid);
    assert!(!report.embeddings[0].is_homomorphism);
}

#[test]
fn example_replays_fixtures() {
    let out = run(&["example", "--name", "z2xz2-inclusion"]);
    assert_eq!(out.status.code(), Some(0));
    let report: ExampleReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.lift_count, 2);
    assert_eq!(report.orbit_size, 2);
    let dims: Vec<usize> = report.strata.iter().map(|s| s.dim).collect();
    assert_eq!(dims, vec![6, 6, 2]);
}

#[test]
fn validation_failures_exit_2_with_a_tagged_object() {
    let out = run(&["group", "--input", &data("nonorthogonal.json")]);
    assert_eq!(out.status.code(), Some(2));
    let report: ErrorReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.error.kind, "non_orthogonal_generator");

    let out = run(&["lifts", "--input", &data("unliftable-map.json")]);
    assert_eq!(out.status.code(), Some(2));
    let report: ErrorReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.error.kind, "no_lifts");

    let out = run(&["example", "--name", "not-a-fixture"]);
    assert_eq!(out.status.code(), Some(2));
    let report: ErrorReport = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(report.error.kind, "unknown_label");
}

#[test]
fn malformed_input_exits_1() {
    // Broken JSON.
    let out = run(&["group", "--input", &data("broken.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());

    // Missing file.
    let out = run(&["group", "--input", &data("no-such-file.json")]);
    assert_eq!(out.status.code(), Some(1));

    // Unknown flag.
    let out = run(&["group", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));

    // No subcommand.
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_deterministic() {
    let flips = data("flips.json");
    let axis = data("axis-map.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["group", "--input", &flips],
        vec!["strata", "--input", &axis, "--format", "dot"],
        vec!["strata", "--input", &axis],
        vec!["example", "--name", "ocube-inclusion"],
        vec!["pullback", "--input", &axis],
    ];
    for args in cases {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "bytes differ for {args:?}");
    }
}
