//! End-to-end checks of the binary: exit codes, the documented example
//! invocations, and byte-level determinism of JSON reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn opecalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opecalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("opecalc-test-{}-{name}", std::process::id()))
}

#[test]
fn check_passes_and_exits_zero() {
    let out = opecalc(&["check", "characters"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("characters: 10 pass, 0 fail"), "got:\n{text}");
}

#[test]
fn unknown_suite_exits_two() {
    let out = opecalc(&["check", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn missing_required_flag_exits_two() {
    let out = opecalc(&["dims", "--case", "E-adjoint"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ope_example_prints_three_poles() {
    let out = opecalc(&["ope", "--case", "adjoint", "--left", "G", "--right", "Gbar"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("G(z) Gbar(w) ~ [3 * |0>] (z-w)^-3"), "got:\n{text}");
    assert!(text.contains("(z-w)^-2"));
    assert!(text.contains("(z-w)^-1"));
    assert!(!text.contains("(z-w)^-4"));
}

#[test]
fn dims_example_counts_the_cubic() {
    let out = opecalc(&[
        "dims", "--case", "E-adjoint", "--weight", "3/2", "--charge", "F=3",
        "--annihilators", "theta",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn char_invariant_equals_ch_o() {
    let invariant = opecalc(&["char", "--which", "invariant", "--order", "2"]);
    let ch_o = opecalc(&["char", "--which", "chO", "--order", "2"]);
    assert!(invariant.status.success() && ch_o.status.success());
    assert_eq!(stdout(&invariant), stdout(&ch_o));
}

#[test]
fn json_reports_are_byte_identical() {
    let a = temp_path("a.json");
    let b = temp_path("b.json");
    for path in [&a, &b] {
        let out = opecalc(&["check", "characters", "--json", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let first = std::fs::read(&a).expect("first report");
    let second = std::fs::read(&b).expect("second report");
    assert!(!first.is_empty());
    assert_eq!(first, second);
    let text = String::from_utf8(first).expect("utf-8 report");
    assert!(text.contains("\"suite\": \"characters\""));
    assert!(text.contains("\"engine_version\""));
    assert!(text.contains("\"config_hash\""));
    let _ = std::fs::remove_file(&a);
    let _ = std::fs::remove_file(&b);
}

#[test]
fn exported_config_reproduces_the_builtin_case() {
    let case = opecalc(&["ope", "--case", "adjoint", "--left", "G", "--right", "Gbar"]);
    let export = opecalc(&["list", "--export", "adjoint"]);
    assert!(case.status.success() && export.status.success());
    let path = temp_path("adjoint.cfg");
    std::fs::write(&path, &export.stdout).expect("write config");
    let cfg = opecalc(&[
        "ope", "--config", path.to_str().unwrap(), "--left", "G", "--right", "Gbar",
    ]);
    assert!(cfg.status.success());
    assert_eq!(stdout(&case), stdout(&cfg));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn list_names_cases_and_suites() {
    let out = opecalc(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["E-adjoint", "S-adjoint", "adjoint", "odake-original", "symplectic-fermions"] {
        assert!(text.contains(name), "missing case {name}");
    }
    for suite in ["engine-invariants", "howe-desk", "characters"] {
        assert!(text.contains(suite), "missing suite {suite}");
    }
}

#[test]
fn cutoff_flag_narrows_the_slow_suite() {
    let out = opecalc(&["check", "howe-desk", "--cutoff", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0 fail"), "got:\n{text}");
}
