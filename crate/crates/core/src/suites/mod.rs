//! Built-in verification suites. Each suite recomputes one published table
//! or identity from scratch through the engine and reports every check.

mod adjoint;
mod howe;
mod invariants;
mod odake;
mod qchecks;
mod standard;

use crate::catalog::{FieldLibrary, SystemCase};
use crate::config::export_library;
use crate::error::{Error, Result};
use crate::report::{Status, SuiteReport};
use crate::scalar::{self, Scalar};

/// Shared knobs. `cutoff` narrows (or widens) whichever bound the suite
/// exposes: the expansion order for `characters`, the weight ceiling for
/// `dims-crosscheck` and `howe-desk`. The other suites ignore it.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// Randomized pairs per system in `engine-invariants`.
    pub pairs: usize,
    pub seed: u64,
    /// Default q-expansion order for `characters`.
    pub qorder: i64,
    pub cutoff: Option<Scalar>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            pairs: 500,
            seed: 2,
            qorder: 6,
            cutoff: None,
        }
    }
}

impl SuiteOptions {
    /// The cutoff override, or the given default, in half-weight steps.
    fn cutoff_half_steps(&self, default_half: i64) -> i64 {
        match &self.cutoff {
            None => default_half,
            Some(c) => {
                let doubled = c.clone() * scalar::int(2);
                if doubled.is_integer() {
                    num::ToPrimitive::to_i64(&doubled.to_integer()).unwrap_or(default_half)
                } else {
                    default_half
                }
            }
        }
    }
}

pub const SUITE_NAMES: [&str; 13] = [
    "engine-invariants",
    "odake-original",
    "adjoint-table",
    "odake-commutant",
    "osp22",
    "sl21",
    "L1sl2",
    "heisenberg-std",
    "w3-minus2",
    "sugawara",
    "characters",
    "dims-crosscheck",
    "howe-desk",
];

pub fn run_suite(name: &str, options: &SuiteOptions) -> Result<SuiteReport> {
    match name {
        "engine-invariants" => invariants::run(options),
        "odake-original" => odake::run_original(options),
        "adjoint-table" => adjoint::run_table(options),
        "odake-commutant" => odake::run_commutant(options),
        "osp22" => adjoint::run_osp22(options),
        "sl21" => standard::run_sl21(options),
        "L1sl2" => standard::run_l1sl2(options),
        "heisenberg-std" => standard::run_heisenberg(options),
        "w3-minus2" => standard::run_w3(options),
        "sugawara" => adjoint::run_sugawara(options),
        "characters" => qchecks::run_characters(options),
        "dims-crosscheck" => qchecks::run_dims(options),
        "howe-desk" => howe::run(options),
        _ => Err(Error::UnknownSuite(name.to_string())),
    }
}

/// Canonical text the report hash is taken over: the suite name, every
/// option, and the full exported configuration of each system the suite
/// touches. Two runs hash alike exactly when they verify the same thing.
fn config_text(suite: &str, options: &SuiteOptions, cases: &[SystemCase]) -> Result<String> {
    let mut out = format!(
        "suite {suite}\npairs = {}\nseed = {}\nqorder = {}\ncutoff = {}\n",
        options.pairs,
        options.seed,
        options.qorder,
        options
            .cutoff
            .as_ref()
            .map(scalar::render)
            .unwrap_or_else(|| "default".into()),
    );
    for case in cases {
        out.push('\n');
        out.push_str(&export_library(&FieldLibrary::build(*case)?));
    }
    Ok(out)
}

fn new_report(suite: &str, options: &SuiteOptions, cases: &[SystemCase]) -> Result<SuiteReport> {
    Ok(SuiteReport::new(suite, &config_text(suite, options, cases)?))
}

/// Runs one block of checks, downgrading an engine error to a single
/// failing row so the rest of the suite still executes.
fn guarded(
    report: &mut SuiteReport,
    anchor: &str,
    block: impl FnOnce() -> Result<Vec<crate::linalg::CheckRow>>,
) {
    match block() {
        Ok(rows) => report.push_rows(&rows),
        Err(e) => report.push(anchor, Status::Fail, "checks to run", &format!("error: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        let err = run_suite("no-such-suite", &SuiteOptions::default()).unwrap_err();
        assert!(matches!(err, Error::UnknownSuite(_)));
    }

    #[test]
    fn cutoff_override_rounds_to_half_steps() {
        let mut opts = SuiteOptions::default();
        assert_eq!(opts.cutoff_half_steps(6), 6);
        opts.cutoff = Some(scalar::frac(3, 2));
        assert_eq!(opts.cutoff_half_steps(6), 3);
        opts.cutoff = Some(scalar::frac(1, 3));
        assert_eq!(opts.cutoff_half_steps(6), 6);
    }
}
