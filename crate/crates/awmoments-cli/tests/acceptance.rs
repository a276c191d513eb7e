//! Acceptance gate: one test per acceptance criterion, each running the
//! relevant verification items at their full documented ranges. Heavy
//! suites are run once and shared between the criteria that draw on them.

use std::process::Command;
use std::sync::OnceLock;

use awmoments::report::{Status, VerificationReport};
use awmoments::suites::{run_suite, scan_conjectures, SuiteConfig};

fn full() -> SuiteConfig {
    SuiteConfig::default()
}

fn suite(name: &str) -> Vec<VerificationReport> {
    run_suite(name, &full()).unwrap_or_else(|e| panic!("suite {name}: {e}"))
}

fn identities() -> &'static [VerificationReport] {
    static CELL: OnceLock<Vec<VerificationReport>> = OnceLock::new();
    CELL.get_or_init(|| suite("identities"))
}

fn bijections() -> &'static [VerificationReport] {
    static CELL: OnceLock<Vec<VerificationReport>> = OnceLock::new();
    CELL.get_or_init(|| suite("bijections"))
}

fn assert_all_pass(reports: &[&VerificationReport]) {
    assert!(!reports.is_empty(), "no checks ran");
    for r in reports {
        assert!(
            r.is_pass(),
            "{} did not pass ({:?}): {:?}",
            r.id,
            r.status,
            r.witness
        );
    }
}

/// The reports whose ids start with one of the given prefixes, asserting
/// that every prefix matched something.
fn subset<'a>(reports: &'a [VerificationReport], prefixes: &[&str]) -> Vec<&'a VerificationReport> {
    for p in prefixes {
        assert!(
            reports.iter().any(|r| r.id.starts_with(p)),
            "no check matches prefix {p}"
        );
    }
    reports
        .iter()
        .filter(|r| prefixes.iter().any(|p| r.id.starts_with(p)))
        .collect()
}

fn all(reports: &[VerificationReport]) -> Vec<&VerificationReport> {
    reports.iter().collect()
}

#[test]
fn criterion_01_closed_forms_match_the_recurrence() {
    assert_all_pass(&all(&suite("closed-forms")));
}

#[test]
fn criterion_02_well_poised_forms_agree() {
    assert_all_pass(&all(&suite("well-poised")));
}

#[test]
fn criterion_03_lattice_path_and_shape_results_hold() {
    assert_all_pass(&subset(
        identities(),
        &[
            "identities/motzkin-weight-sum/",
            "motzkin/binomial-transform/",
            "identities/restricted-sum-closed-form/",
            "identities/restricted-sum-symmetric/",
            "identities/reading-word/",
            "identities/striped-count/",
        ],
    ));
    assert_all_pass(&all(&suite("involutions")));
    assert_all_pass(&subset(
        bijections(),
        &["bijections/path-shape-correspondence/", "bijections/rotation/"],
    ));
}

#[test]
fn criterion_04_staircase_model_holds() {
    assert_all_pass(&all(&suite("staircase")));
    assert_all_pass(&subset(
        bijections(),
        &["bijections/catalan-arrow-criterion/"],
    ));
}

#[test]
fn criterion_05_matching_model_holds() {
    assert_all_pass(&subset(
        identities(),
        &[
            "identities/matching-polynomial/",
            "identities/matching-moment-rebuild/",
            "identities/matching-moment-rebuild-full/",
            "identities/block-generating-function",
        ],
    ));
}

#[test]
fn criterion_06_proven_positivity_holds() {
    assert_all_pass(&all(&suite("positivity")));
}

#[test]
fn criterion_07_conjecture_scans_report_no_violation() {
    let reports = scan_conjectures(&full()).expect("scan");
    assert!(!reports.is_empty());
    for r in &reports {
        assert_eq!(
            r.status,
            Status::Pass,
            "{} reported {:?}: {:?}",
            r.id,
            r.status,
            r.witness
        );
    }
    for p in ["scan/symmetric-tau-nonnegative/n=5", "scan/flip-nonnegative/n=4,i=2,j=2"] {
        assert!(reports.iter().any(|r| r.id == p), "missing scan item {p}");
    }
}

#[test]
fn criterion_08_related_families_match_their_oracles() {
    assert_all_pass(&all(&suite("related")));
}

#[test]
fn criterion_09_coefficient_identities_hold() {
    assert_all_pass(&subset(identities(), &["qcalc/"]));
}

#[test]
fn criterion_10_cli_output_is_deterministic() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_awmoments"))
            .args(["verify", "--suite", "all", "--n", "4", "--seed", "123"])
            .output()
            .expect("run the binary")
    };
    let (a, b) = (run(), run());
    assert!(a.status.success(), "first run failed: {a:?}");
    assert!(b.status.success(), "second run failed: {b:?}");
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout, "outputs differ between identical runs");

    let json = Command::new(env!("CARGO_BIN_EXE_awmoments"))
        .args(["verify", "--suite", "all", "--n", "4", "--seed", "123", "--format", "json"])
        .output()
        .expect("run the binary");
    assert!(json.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&json.stdout).expect("valid JSON");
    assert!(parsed.as_array().is_some_and(|a| !a.is_empty()));
}
