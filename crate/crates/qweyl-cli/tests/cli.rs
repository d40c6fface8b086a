//! End-to-end checks of the installed binary: exit-code contract, output
//! formats, file output, and run-to-run determinism.

use std::process::{Command, Output};

fn qweyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qweyl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn passing_command_exits_zero() {
    let out = qweyl(&["verify-aq", "--mode", "series", "--order", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("overall: pass"));
}

#[test]
fn verified_failure_exits_one() {
    // Residuals are ~1e-15, so an absurdly tight tolerance is a clean,
    // well-formed run whose verdict is negative.
    let out = qweyl(&[
        "verify-aq",
        "--mode",
        "numeric",
        "--theta",
        "0.3",
        "--tol",
        "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("overall: FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    // Unknown subcommand (rejected by the parser).
    let out = qweyl(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // Slope fit needs at least two samples.
    let out = qweyl(&["oracle-convergence", "--theta", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    // Log-scale fit rejects non-positive angles.
    let out = qweyl(&["oracle-convergence", "--theta", "0.1", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // Coordinate index out of range.
    let out = qweyl(&["expand", "beta", "--coord", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let a = qweyl(&["derive", "bfield", "--order", "2", "--format", "json"]);
    let b = qweyl(&["derive", "bfield", "--order", "2", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn latex_format_renders_display_math() {
    let out = qweyl(&["expand", "beta", "--coord", "1", "--format", "latex"]);
    let body = stdout(&out);
    assert!(body.contains("\\begin{align*}"));
    assert!(body.contains("\\beta_{1}"));
    assert!(body.contains("\\frac{5}{24}"));
}

#[test]
fn output_flag_writes_the_rendered_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qweyl(&[
        "expand",
        "beta",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&out));
}

#[test]
fn relative_output_paths_resolve_under_the_output_dir_variable() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qweyl"))
        .args(["check-spq6", "--format", "json", "--output", "sub/report.json"])
        .env("QWEYL_OUTPUT_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(dir.path().join("sub/report.json")).unwrap();
    assert_eq!(written, stdout(&out));
}

#[test]
fn momentum_mismatches_are_adjudicated_by_the_curated_file() {
    let out = qweyl(&["derive", "momentum", "--order", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "documented mismatches still pass");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let comparisons = v["discrepancies"].as_array().unwrap();
    assert_eq!(comparisons.len(), 3);
    for c in comparisons {
        assert_eq!(c["status"], "mismatch");
        assert_eq!(c["undocumented"], 0);
        for m in c["mismatches"].as_array().unwrap() {
            assert_eq!(m["documented"], true);
        }
    }
}

#[test]
fn spq6_self_test_flags_corrupted_matrices() {
    let out = qweyl(&[
        "check-spq6",
        "--self-test",
        "6",
        "--seed",
        "11",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["self_test"]["all_detected"], true);
    assert_eq!(v["results"]["self_test"]["mutations"], 6);
}
