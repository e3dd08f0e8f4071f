//! Acceptance gate: ten release criteria, one line of output each.
//!
//! Every criterion runs the relevant check suite(s) at default options and
//! asserts (a) zero failed checks and (b) the wall-clock budget. Run with
//! `cargo test --test acceptance -- --nocapture` to see the summary lines.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use opecalc::suites::{run_suite, SuiteOptions, SUITE_NAMES};

/// Suites share one CPU in CI; serialize the timed sections so each
/// criterion's wall clock measures its own work only.
static GATE: Mutex<()> = Mutex::new(());

struct Outcome {
    checks: usize,
    failed: usize,
    elapsed: Duration,
    detail: String,
}

fn run_suites(names: &[&str]) -> Outcome {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let options = SuiteOptions::default();
    let start = Instant::now();
    let mut checks = 0;
    let mut failed = 0;
    let mut detail = String::new();
    for name in names {
        let report = run_suite(name, &options).expect("suite runs");
        checks += report.checks.len();
        failed += report.summary.fail;
        if report.summary.fail > 0 {
            detail.push_str(&report.to_text());
        }
    }
    Outcome { checks, failed, elapsed: start.elapsed(), detail }
}

fn criterion(number: u32, label: &str, names: &[&str], budget: Duration) {
    let outcome = run_suites(names);
    let ok = outcome.failed == 0 && outcome.elapsed <= budget;
    println!(
        "criterion {:>2} [{}] {}: {} checks, {} failed, {:.1}s (budget {}s)",
        number,
        if ok { "pass" } else { "FAIL" },
        label,
        outcome.checks,
        outcome.failed,
        outcome.elapsed.as_secs_f64(),
        budget.as_secs(),
    );
    assert_eq!(outcome.failed, 0, "{} failed checks\n{}", label, outcome.detail);
    assert!(
        outcome.elapsed <= budget,
        "{} overran its budget: {:.1}s > {}s",
        label,
        outcome.elapsed.as_secs_f64(),
        budget.as_secs()
    );
}

#[test]
fn criterion_01_engine_invariants() {
    // Skew-symmetry, the commutator formula, unit/derivative laws and
    // quasi-commutativity on 500 randomized homogeneous pairs per system.
    criterion(1, "engine-invariants", &["engine-invariants"], Duration::from_secs(60));
}

#[test]
fn criterion_02_odake_original() {
    // The full N=2 + X/Y table of the original rank-3 Odake construction.
    criterion(2, "odake-original", &["odake-original"], Duration::from_secs(60));
}

#[test]
fn criterion_03_adjoint_table() {
    // The complete OPE table of the adjoint-variable system.
    criterion(3, "adjoint-table", &["adjoint-table"], Duration::from_secs(300));
}

#[test]
fn criterion_04_odake_commutant() {
    // All eight generators annihilated by the theta and v currents,
    // c = 9 with the stated weights, and the coset identity for L.
    criterion(4, "odake-commutant", &["odake-commutant"], Duration::from_secs(120));
}

#[test]
fn criterion_05_levels_and_central_charges() {
    // v-fields at level -3/2, the theta pairing at level -4, and the four
    // central charges 6, -6, 0, 0 plus the c = -9 genuine Sugawara vector.
    criterion(5, "levels and central charges", &["sugawara"], Duration::from_secs(300));
}

#[test]
fn criterion_06_small_algebra_suites() {
    // Heisenberg norm, level-1 sl(2) triple, the sl(2|1) octet with central
    // terms, and the symplectic-fermion W(3) generator with its full OPE.
    criterion(
        6,
        "small-algebra suites",
        &["heisenberg-std", "L1sl2", "sl21", "w3-minus2"],
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_07_characters() {
    // Jacobi triple product to order q^6, product form vs theta-sum form,
    // and the invariant extraction matching ch_O coefficientwise.
    criterion(7, "characters", &["characters"], Duration::from_secs(30));
}

#[test]
fn criterion_08_dims_crosscheck() {
    // Annihilator-slice dimensions against ch_O coefficients for all grades
    // with weight <= 3 and |F| <= 3, including the named spot values.
    criterion(8, "dims-crosscheck", &["dims-crosscheck"], Duration::from_secs(300));
}

#[test]
fn criterion_09_howe_desk() {
    // Inside each graded slice of the big coset, the joint annihilator of
    // the eight Odake generators equals the span of the small coset.
    criterion(9, "howe-desk", &["howe-desk"], Duration::from_secs(900));
}

#[test]
fn criterion_10_determinism() {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let options = SuiteOptions::default();
    let sweep = || -> String {
        SUITE_NAMES
            .iter()
            .map(|name| run_suite(name, &options).expect("suite runs").to_json())
            .collect()
    };
    let first = sweep();
    let second = sweep();
    let ok = first == second;
    println!(
        "criterion 10 [{}] determinism: two full runs over {} suites byte-identical",
        if ok { "pass" } else { "FAIL" },
        SUITE_NAMES.len(),
    );
    assert!(ok, "JSON reports differ between consecutive runs");
}
