//! End-to-end tests of the installed binary: exit codes, report shape,
//! determinism, file input and file output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn invsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invsemi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 report")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 error")
}

#[test]
fn validate_passes_on_a_family() {
    let out = invsemi(&["validate", "--family", "chain", "--param", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("CHECK semigroup-axioms: PASS"));
    assert!(text.contains("order 4"));
}

#[test]
fn validate_reads_instance_files() {
    let path = fixture("two-atoms.inst");
    let out = invsemi(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("CHECK semigroup-axioms: PASS"));
    assert!(text.contains("CHECK congruence-valid: PASS"));
    assert!(text.contains("CHECK action-premorphism: PASS"));
    assert!(text.contains("subset size 3"));
}

#[test]
fn verified_false_results_exit_one() {
    let out = invsemi(&["globalizable", "--family", "two-atoms"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("CHECK globalizable: FAIL"));
}

#[test]
fn join_conflict_fixture_exits_one_with_the_point() {
    let path = fixture("z2-universal.inst");
    let out = invsemi(&["lift", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("CHECK lift-join-defined: FAIL"), "{text}");
    assert!(text.contains("point 0"), "{text}");
}

#[test]
fn missing_file_exits_two() {
    let out = invsemi(&["orders", "--input", "/nonexistent/foo.inst"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn malformed_row_reports_its_line_and_exits_two() {
    let path = fixture("bad-row.inst");
    let out = invsemi(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn clap_usage_errors_exit_two() {
    let out = invsemi(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = invsemi(&["validate", "--param", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = invsemi(&[
        "validate",
        "--family",
        "chain",
        "--param",
        "3",
        "--input",
        "x.inst",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quotient_without_congruence_exits_two() {
    let path = fixture("chain4.inst");
    let out = invsemi(&["quotient", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("congruence"));
}

#[test]
fn embed_on_the_two_atom_example() {
    let path = fixture("two-atoms.inst");
    let out = invsemi(&["embed", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("CHECK embedding-injective: PASS"));
    assert!(text.contains("product-order 4"));
    assert!(text.contains("strict-part-order 3"));
}

#[test]
fn certify_all_is_deterministic() {
    let a = invsemi(&["certify-all", "--max-n", "4"]);
    let b = invsemi(&["certify-all", "--max-n", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("CHECK corpus-embedding-theorem: PASS"));
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = std::env::temp_dir().join("invsemi-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("munn-z4.txt");
    let path = fixture("z4.inst");
    let out = invsemi(&[
        "munn",
        "--input",
        path.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&report).unwrap();
    assert!(written.contains("CHECK munn-global: PASS"));
    let direct = invsemi(&["munn", "--input", path.to_str().unwrap()]);
    assert_eq!(written, stdout(&direct));
    std::fs::remove_file(&report).unwrap();
}

#[test]
fn ltriple_verb_round_trips_z4() {
    let path = fixture("z4.inst");
    let out = invsemi(&["ltriple", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("CHECK ltriple-built: PASS"));
    assert!(text.contains("CHECK pair-semigroup-matches-product: PASS"));
}

#[test]
fn congruences_lists_partitions_with_purity() {
    let path = fixture("chain4.inst");
    let out = invsemi(&["congruences", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("congruences 8"), "{text}");
    assert!(text.contains("idempotent-pure 8"), "{text}");
    assert!(text.contains("CHECK equality-and-universal-present: PASS"));
}
