//! Command-line front end for the exact OPE engine: one-off products,
//! named verification suites, graded annihilator dimensions, and
//! character series.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use opecalc::catalog::{FieldLibrary, SystemCase};
use opecalc::config;
use opecalc::error::{Error, Result};
use opecalc::expr;
use opecalc::linalg::{annihilator_slice, GradeQuery, ModeRange};
use opecalc::qseries::{self, TriSeries};
use opecalc::scalar;
use opecalc::state::{State, WeightAssignment};
use opecalc::suites::{self, SuiteOptions};
use opecalc::system::FreeFieldSystem;
use opecalc::wick::Engine;

#[derive(Parser)]
#[command(name = "opecalc", version, about = "Exact operator product calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the system and field definitions come from: a built-in catalog
/// case or a config file.
#[derive(Args)]
struct Source {
    /// Built-in case name (see `opecalc list`).
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    case: Option<String>,
    /// Config file with [system] and [fields] sections.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print every singular term of the product of two fields.
    Ope {
        #[command(flatten)]
        source: Source,
        /// Left factor: a field name or an expression.
        #[arg(long)]
        left: String,
        /// Right factor: a field name or an expression.
        #[arg(long)]
        right: String,
    },
    /// Run a named verification suite and print its report.
    Check {
        /// Suite name (see `opecalc list`).
        suite: String,
        /// Also write the machine-readable report to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Override the weight cutoff for graded scans (a rational, e.g. 7/2).
        #[arg(long)]
        cutoff: Option<String>,
    },
    /// Dimension of a joint annihilator slice at fixed weight and charge.
    Dims {
        #[command(flatten)]
        source: Source,
        /// Conformal weight of the slice (a rational, e.g. 3/2).
        #[arg(long)]
        weight: String,
        /// Charge constraints, comma separated, e.g. F=3 or F=0,H=2.
        #[arg(long)]
        charge: String,
        /// Comma-separated annihilating fields, or "theta" for the
        /// case's distinguished odd quadratics.
        #[arg(long, default_value = "theta")]
        annihilators: String,
        /// Impose only the zero modes of the annihilators instead of
        /// all nonnegative modes.
        #[arg(long)]
        zero_modes_only: bool,
    },
    /// Print a character series as an aligned table of coefficients.
    Char {
        /// Which series: chO, chE, or invariant.
        #[arg(long)]
        which: String,
        /// Truncation order: all terms with q-exponent <= this integer.
        #[arg(long)]
        order: i64,
        /// Also write the sorted (z, w, q-half, coeff) rows as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List built-in cases with their field definitions, and the suites.
    List {
        /// Export one case as a config document instead.
        #[arg(long)]
        export: Option<String>,
    },
}

fn main() -> ExitCode {
    // Die quietly when the reader of a pipe goes away (`opecalc list | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Ope { source, left, right } => cmd_ope(&source, &left, &right),
        Command::Check { suite, json, cutoff } => cmd_check(&suite, json.as_deref(), cutoff),
        Command::Dims {
            source,
            weight,
            charge,
            annihilators,
            zero_modes_only,
        } => cmd_dims(&source, &weight, &charge, &annihilators, zero_modes_only),
        Command::Char { which, order, json } => cmd_char(&which, order, json.as_deref()),
        Command::List { export } => cmd_list(export.as_deref()),
    }
}

/// A system plus named field definitions, from either source.
struct Loaded {
    system: FreeFieldSystem,
    /// (name, expression) in declaration order.
    fields: Vec<(String, String)>,
    /// Distinguished annihilator names; empty for config files.
    thetas: Vec<String>,
}

impl Loaded {
    fn from(source: &Source) -> Result<Loaded> {
        if let Some(path) = &source.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Other(format!("{}: {e}", path.display())))?;
            let doc = config::parse_config(&text)?;
            return Ok(Loaded {
                system: doc.system,
                fields: doc.fields,
                thetas: Vec::new(),
            });
        }
        let name = source.case.as_deref().expect("clap requires case or config");
        let case = SystemCase::parse(name)?;
        let lib = FieldLibrary::build(case)?;
        let doc = config::parse_config(&config::export_library(&lib))?;
        Ok(Loaded {
            system: doc.system,
            fields: doc.fields,
            thetas: lib.theta_names().iter().map(|s| s.to_string()).collect(),
        })
    }

    fn evaluate(&self, engine: &Engine) -> Result<BTreeMap<String, State>> {
        config::evaluate_fields(engine, &self.fields)
    }
}

fn eval_in(
    engine: &Engine,
    values: &BTreeMap<String, State>,
    text: &str,
) -> Result<State> {
    let resolve = |n: &str| -> Option<State> {
        if let Some(s) = values.get(n) {
            return Some(s.clone());
        }
        engine.gen_mode_apply(n, -1, &State::vacuum()).ok()
    };
    expr::eval_str(text, engine, &resolve)
}

fn cmd_ope(source: &Source, left: &str, right: &str) -> Result<bool> {
    let loaded = Loaded::from(source)?;
    let engine = Engine::new(&loaded.system);
    let values = loaded.evaluate(&engine)?;
    let a = eval_in(&engine, &values, left)?;
    let b = eval_in(&engine, &values, right)?;
    let result = engine.ope_named(left, &a, right, &b)?;
    println!("{}", result.display(&loaded.system));
    Ok(true)
}

fn cmd_check(suite: &str, json: Option<&Path>, cutoff: Option<String>) -> Result<bool> {
    let mut options = SuiteOptions::default();
    if let Some(text) = cutoff {
        let value = scalar::parse(&text)
            .ok_or_else(|| Error::Other(format!("invalid cutoff `{text}`")))?;
        options.cutoff = Some(value);
    }
    let report = suites::run_suite(suite, &options)?;
    print!("{}", report.to_text());
    if let Some(path) = json {
        std::fs::write(path, report.to_json())
            .map_err(|e| Error::Other(format!("{}: {e}", path.display())))?;
    }
    Ok(report.all_pass())
}

fn cmd_dims(
    source: &Source,
    weight: &str,
    charge: &str,
    annihilators: &str,
    zero_modes_only: bool,
) -> Result<bool> {
    let loaded = Loaded::from(source)?;
    let engine = Engine::new(&loaded.system);
    let values = loaded.evaluate(&engine)?;

    let wt = scalar::parse(weight)
        .ok_or_else(|| Error::Other(format!("invalid weight `{weight}`")))?;
    let mut charges: Vec<(String, i64)> = Vec::new();
    for part in charge.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Other(format!("charge `{part}` is not name=value")))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Other(format!("charge value in `{part}` is not an integer")))?;
        charges.push((name.trim().to_string(), value));
    }
    let pairs: Vec<(&str, i64)> = charges.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    let query = GradeQuery::new(&loaded.system, wt, &pairs)?;

    let names: Vec<String> = if annihilators == "theta" {
        if loaded.thetas.is_empty() {
            return Err(Error::Other(
                "this source has no distinguished annihilator set; pass field names".into(),
            ));
        }
        loaded.thetas.clone()
    } else {
        annihilators.split(',').map(|s| s.trim().to_string()).collect()
    };
    let states: Vec<State> = names
        .iter()
        .map(|n| eval_in(&engine, &values, n))
        .collect::<Result<_>>()?;

    let range = if zero_modes_only {
        ModeRange::ZeroOnly
    } else {
        ModeRange::FromZero
    };
    let weights = WeightAssignment::default_for(&loaded.system);
    let slice = annihilator_slice(&engine, &states, &weights, &query, range)?;
    println!("{}", slice.dim());
    Ok(true)
}

fn cmd_char(which: &str, order: i64, json: Option<&Path>) -> Result<bool> {
    if order < 0 {
        return Err(Error::Other("order must be nonnegative".into()));
    }
    let series: TriSeries = match which {
        "chO" => qseries::ch_o(order),
        "chE" => qseries::ch_e_product(order),
        "invariant" => qseries::invariant_extract(&qseries::ch_e_product(order)),
        other => {
            return Err(Error::Other(format!(
                "unknown series `{other}` (expected chO, chE, or invariant)"
            )))
        }
    };
    let rows = series.rows();
    println!("{:>6} {:>6} {:>8} {:>10}", "z", "w", "q-half", "coeff");
    for (z, w, qhalf, coeff) in &rows {
        println!("{z:>6} {w:>6} {qhalf:>8} {coeff:>10}");
    }
    if let Some(path) = json {
        let mut out = String::from("[");
        for (i, (z, w, qhalf, coeff)) in rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("[{z},{w},{qhalf},{coeff}]"));
        }
        out.push_str("]\n");
        std::fs::write(path, out).map_err(|e| Error::Other(format!("{}: {e}", path.display())))?;
    }
    Ok(true)
}

fn cmd_list(export: Option<&str>) -> Result<bool> {
    if let Some(name) = export {
        let case = SystemCase::parse(name)?;
        let lib = FieldLibrary::build(case)?;
        print!("{}", config::export_library(&lib));
        return Ok(true);
    }
    println!("cases:");
    for case in SystemCase::all() {
        let lib = FieldLibrary::build(*case)?;
        println!("  {}", case.name());
        for field in lib.names() {
            if let Some(formula) = lib.formula(field) {
                println!("    {field} = {formula}");
            }
        }
        if !lib.theta_names().is_empty() {
            println!("    annihilators: {}", lib.theta_names().join(", "));
        }
    }
    println!("suites:");
    for suite in suites::SUITE_NAMES {
        println!("  {suite}");
    }
    Ok(true)
}
