use std::process::Command;

use rigidity_cli::{SuiteReport, Status};

fn verify(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(verify(&["bogus"]).0, Some(2));
    assert_eq!(verify(&["weights", "--format", "yaml"]).0, Some(2));
}

#[test]
fn weights_without_samples() {
    let (code, out) = verify(&["weights", "--seed", "1", "--samples", "0", "--format", "json"]);
    assert_eq!(code, Some(0));
    let r: SuiteReport = serde_json::from_str(&out).unwrap();
    let zero: Vec<_> = r.checks.iter().filter(|c| c.name.ends_with("zero_weight_multiplicity")).collect();
    assert_eq!(zero.len(), 4);
    assert!(zero.iter().all(|c| c.status == Status::Pass));
    let m: Vec<u64> = zero.iter().map(|c| c.witness.as_ref().unwrap()["zero_multiplicity"].as_u64().unwrap()).collect();
    assert_eq!(m, [1, 2, 2, 2]);
}

#[test]
fn degeneration_report_contains_the_contradiction() {
    let (code, out) = verify(&["degeneration", "--format", "json"]);
    assert_eq!(code, Some(0));
    let r: SuiteReport = serde_json::from_str(&out).unwrap();
    let c = r.check("degeneration.theta0.solution1").unwrap();
    assert_eq!(c.witness.as_ref().unwrap()["result"]["verdict"], "contradiction");
    assert!(r.checks.iter().all(|c| c.duration_ms == 0));
}

#[test]
fn report_written_to_file() {
    let dir = std::env::temp_dir().join(format!("verify-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("surfaces.json");
    let (code, out) = verify(&["surfaces", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!(out.is_empty());
    let r: SuiteReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.suite, "surfaces");
    assert!(r.all_passed());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn single_algebra_filter() {
    let (code, out) = verify(&["algebra", "--algebra", "OC", "--samples", "5", "--format", "json"]);
    assert_eq!(code, Some(0));
    let r: SuiteReport = serde_json::from_str(&out).unwrap();
    assert!(!r.checks.is_empty() && r.checks.iter().all(|c| c.name.starts_with("algebra.OC.")));
}
