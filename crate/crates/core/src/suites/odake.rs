//! The Odake algebra, twice over: once on its original free-field
//! realization (rank-6 Heisenberg tensor rank-3 bc), once as the commutant
//! inside the adjoint bc-beta-gamma system.

use super::{guarded, new_report, SuiteOptions};
use crate::catalog::{FieldLibrary, SystemCase};
use crate::error::Result;
use crate::linalg::{closure_check, conformal_check, span_coefficients, CheckRow, ClosureEntry, ConformalField};
use crate::report::SuiteReport;
use crate::scalar::{self, Scalar};
use crate::state::State;
use crate::wick::Engine;

/// The full published OPE table of the eight generators. Pairs displayed as
/// regular get an empty pole list; every other unordered pair of the listed
/// fields is swept to zero, which is exactly the "remaining operator
/// products" claim.
fn odake_table() -> Vec<ClosureEntry> {
    vec![
        ClosureEntry::new("F", "F", &[(1, "3 one")]),
        ClosureEntry::new("G", "G", &[]),
        ClosureEntry::new("Gbar", "Gbar", &[]),
        ClosureEntry::new("F", "G", &[(0, "G")]),
        ClosureEntry::new("F", "Gbar", &[(0, "- Gbar")]),
        ClosureEntry::new(
            "G",
            "Gbar",
            &[(2, "3 one"), (1, "F"), (0, "L + 1/2 d(F)")],
        ),
        ClosureEntry::new("F", "X", &[(0, "3 X")]),
        ClosureEntry::new("F", "Xbar", &[(0, "-3 Xbar")]),
        ClosureEntry::new(
            "X",
            "Xbar",
            &[(2, "- one"), (1, "- F"), (0, "- 1/2 (W(F, F) + d(F))")],
        ),
        ClosureEntry::new("F", "Y", &[(0, "2 Y")]),
        ClosureEntry::new("F", "Ybar", &[(0, "-2 Ybar")]),
        ClosureEntry::new("G", "X", &[]),
        ClosureEntry::new("Gbar", "X", &[(0, "2 Y")]),
        ClosureEntry::new("Gbar", "Xbar", &[]),
        ClosureEntry::new("G", "Xbar", &[(0, "2 Ybar")]),
        ClosureEntry::new("G", "Y", &[(1, "3/2 X"), (0, "1/2 d(X)")]),
        ClosureEntry::new("G", "Ybar", &[]),
        ClosureEntry::new("Gbar", "Ybar", &[(1, "3/2 Xbar"), (0, "1/2 d(Xbar)")]),
        ClosureEntry::new("Gbar", "Y", &[]),
        ClosureEntry::new(
            "Y",
            "Ybar",
            &[
                (3, "- 3/4 one"),
                (2, "- 1/2 F"),
                (1, "- 1/4 (L + d(F) + 1/2 W(F, F))"),
                (0, "1/4 (W(G, Gbar) - W(L, F) - d(L) - 1/4 d(W(F, F)))"),
            ],
        ),
        ClosureEntry::new("X", "Ybar", &[(1, "- 1/2 G"), (0, "- 1/2 (W(G, F) + d(G))")]),
        ClosureEntry::new(
            "Xbar",
            "Y",
            &[(1, "- 1/2 Gbar"), (0, "- 1/2 (- W(Gbar, F) + d(Gbar))")],
        ),
        ClosureEntry::new("X", "Y", &[]),
        ClosureEntry::new("Xbar", "Ybar", &[]),
    ]
}

fn conformal_fields(lib: &FieldLibrary) -> Result<Vec<ConformalField>> {
    let mut out = Vec::new();
    for (name, weight) in [
        ("F", scalar::int(1)),
        ("G", scalar::frac(3, 2)),
        ("Gbar", scalar::frac(3, 2)),
        ("X", scalar::frac(3, 2)),
        ("Xbar", scalar::frac(3, 2)),
        ("Y", scalar::int(2)),
        ("Ybar", scalar::int(2)),
    ] {
        out.push(ConformalField::primary(name, lib.get(name)?.clone(), weight));
    }
    Ok(out)
}

fn relation_rows(engine: &Engine, lib: &FieldLibrary) -> Result<Vec<CheckRow>> {
    let pairs = [
        ("d(X) = W(F, X)", "d(X)", "W(F, X)"),
        ("d(Xbar) = - W(F, Xbar)", "d(Xbar)", "- W(F, Xbar)"),
        ("W(Y, Y) = 0", "W(Y, Y)", "0 one"),
        ("W(Ybar, Ybar) = 0", "W(Ybar, Ybar)", "0 one"),
    ];
    let mut rows = Vec::new();
    for (label, left, right) in pairs {
        let l = lib.eval(engine, left)?;
        let r = lib.eval(engine, right)?;
        rows.push(CheckRow {
            label: label.into(),
            ok: l == r,
            expected: r.display(&lib.system),
            got: l.display(&lib.system),
        });
    }
    Ok(rows)
}

pub fn run_original(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report("odake-original", options, &[SystemCase::OdakeOriginal])?;
    let lib = FieldLibrary::build(SystemCase::OdakeOriginal)?;
    let engine = Engine::new(&lib.system);
    let fields: Vec<(String, State)> = ["F", "G", "Gbar", "X", "Xbar", "Y", "Ybar"]
        .iter()
        .map(|n| Ok((n.to_string(), lib.get(n)?.clone())))
        .collect::<Result<_>>()?;
    let resolve = |name: &str| lib.resolve(name);

    guarded(&mut report, "eight-generator OPE table", || {
        closure_check(&engine, &fields, &resolve, &odake_table())
    });
    let conformal = conformal_check(&engine, lib.get("L")?, Some(scalar::int(9)), &conformal_fields(&lib)?);
    report.push_rows(&conformal.rows);
    guarded(&mut report, "normally ordered polynomial relations", || {
        relation_rows(&engine, &lib)
    });
    Ok(report)
}

pub fn run_commutant(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report("odake-commutant", options, &[SystemCase::AdjointW])?;
    let lib = FieldLibrary::build(SystemCase::AdjointW)?;
    let engine = Engine::new(&lib.system);
    let sys = &lib.system;

    let fields: Vec<(String, State)> = ["F", "G", "Gbar", "X", "Xbar", "Y", "Ybar"]
        .iter()
        .map(|n| Ok((n.to_string(), lib.get(n)?.clone())))
        .collect::<Result<_>>()?;
    let resolve = |name: &str| lib.resolve(name);
    guarded(&mut report, "same OPE table in the commutant realization", || {
        closure_check(&engine, &fields, &resolve, &odake_table())
    });

    let annihilators = ["Th_W_x", "Th_W_y", "Th_W_h", "v_x", "v_y", "v_h"];
    let generators = ["F", "L", "G", "Gbar", "X", "Xbar", "Y", "Ybar"];
    for a in annihilators {
        let astate = lib.get(a)?.clone();
        for g in generators {
            let gstate = lib.get(g)?.clone();
            let bound = engine.pole_bound(&astate, &gstate);
            let mut offenders = Vec::new();
            for n in 0..bound {
                let p = engine.circle(&astate, &gstate, n);
                if !p.is_zero() {
                    offenders.push(format!("pole {n}: {}", p.display(sys)));
                }
            }
            report.push_bool(
                &format!("{a}(n){g} = 0 for all n >= 0"),
                offenders.is_empty(),
                "0",
                &if offenders.is_empty() {
                    "0".to_string()
                } else {
                    offenders.join("; ")
                },
            );
        }
    }

    let conformal = conformal_check(&engine, lib.get("L")?, Some(scalar::int(9)), &conformal_fields(&lib)?);
    report.push_rows(&conformal.rows);

    guarded(&mut report, "conformal vector identities", || {
        let mut rows = Vec::new();
        let wgt = lib.get("L_Wgt")?;
        let sum = lib.eval(&engine, "C(G, Gbar, 0) + L_Sgt")?;
        rows.push(CheckRow {
            label: "L_Wgt = C(G, Gbar, 0) + L_Sgt".into(),
            ok: *wgt == sum,
            expected: wgt.display(sys),
            got: sum.display(sys),
        });
        let target = lib.eval(&engine, "C(G, Gbar, 0)")?;
        let basis = [lib.get("L_Wgt")?.clone(), lib.get("L_Sgt")?.clone()];
        let coeffs = span_coefficients(&target, &basis);
        let want: Option<Vec<Scalar>> = Some(vec![scalar::int(1), scalar::int(-1)]);
        rows.push(CheckRow {
            label: "C(G, Gbar, 0) = L_Wgt - L_Sgt (span coefficients)".into(),
            ok: coeffs == want,
            expected: "(1, -1)".into(),
            got: match &coeffs {
                Some(v) => format!(
                    "({})",
                    v.iter().map(scalar::render).collect::<Vec<_>>().join(", ")
                ),
                None => "not in span".into(),
            },
        });
        Ok(rows)
    });

    guarded(&mut report, "two constructions agree", || {
        let mut rows = Vec::new();
        for (label, lhs, rhs) in [
            ("Y = 1/2 C(Gbar, X, 0)", "Y", "1/2 C(Gbar, X, 0)"),
            ("Ybar = 1/2 C(G, Xbar, 0)", "Ybar", "1/2 C(G, Xbar, 0)"),
            ("L = L_Wgt - L_Sgt - 1/2 d(F)", "L", "L_Wgt - L_Sgt - 1/2 d(F)"),
        ] {
            let l = lib.eval(&engine, lhs)?;
            let r = lib.eval(&engine, rhs)?;
            rows.push(CheckRow {
                label: label.into(),
                ok: l == r,
                expected: r.display(sys),
                got: l.display(sys),
            });
        }
        Ok(rows)
    });

    guarded(&mut report, "normally ordered polynomial relations", || {
        relation_rows(&engine, &lib)
    });
    Ok(report)
}
