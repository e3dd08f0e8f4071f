//! Realizations on the standard (two-dimensional) module and the two small
//! §6-style systems: the sl(2|1) octet, the level-one sl2 triple in the
//! bc-system, the rank-one Heisenberg field, and the symplectic-fermion
//! W3 algebra at central charge -2.

use super::{guarded, new_report, SuiteOptions};
use crate::catalog::{FieldLibrary, SystemCase};
use crate::error::Result;
use crate::linalg::{closure_check, conformal_check, span_coefficients, ClosureEntry, ConformalField};
use crate::report::SuiteReport;
use crate::scalar::{self, Scalar};
use crate::state::{NormalMonomial, State};
use crate::wick::Engine;

fn render_combination(coeffs: &[Scalar], names: &[&str]) -> String {
    let mut out = String::new();
    for (c, n) in coeffs.iter().zip(names) {
        if scalar::is_zero(c) {
            continue;
        }
        let negative = scalar::signum(c) < 0;
        if out.is_empty() {
            if negative {
                out.push_str("- ");
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let magnitude = if negative { -c.clone() } else { c.clone() };
        if !scalar::is_one(&magnitude) {
            out.push_str(&scalar::render(&magnitude));
            out.push(' ');
        }
        out.push_str(n);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The eight currents of the octet close on themselves: every first-order
/// product is a multiple of the vacuum (the level), every zeroth-order
/// product lies in the span of the octet (the bracket), and nothing
/// survives at order two or higher. The suite records the full structure it
/// finds rather than assuming one.
pub fn run_sl21(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report("sl21", options, &[SystemCase::StandardW])?;
    let lib = FieldLibrary::build(SystemCase::StandardW)?;
    let engine = Engine::new(&lib.system);
    let sys = &lib.system;

    let names = ["H", "F", "Ep", "Em", "Q1m", "Q1p", "Q2p", "Q2m"];
    let octet: Vec<State> = names
        .iter()
        .map(|n| Ok(lib.get(n)?.clone()))
        .collect::<Result<_>>()?;
    let vacuum = NormalMonomial::vacuum();

    for i in 0..names.len() {
        for j in i..names.len() {
            let (a, b) = (&octet[i], &octet[j]);
            let (la, lb) = (names[i], names[j]);

            let got1 = engine.circle(a, b, 1);
            let central = got1.coefficient(&vacuum);
            let mut rest = got1.clone();
            rest.add_term(-central.clone(), vacuum.clone());
            report.push_bool(
                &format!("{la}(1){lb} is a central term (recorded)"),
                rest.is_zero(),
                "scalar multiple of one",
                &got1.display(sys),
            );

            let got0 = engine.circle(a, b, 0);
            let coeffs = span_coefficients(&got0, &octet);
            report.push_bool(
                &format!("{la}(0){lb} lies in the span of the octet"),
                coeffs.is_some(),
                "combination of the eight currents",
                &match &coeffs {
                    Some(c) => render_combination(c, &names),
                    None => format!("outside the span: {}", got0.display(sys)),
                },
            );

            let bound = engine.pole_bound(a, b);
            let mut offenders = Vec::new();
            for n in 2..bound {
                let p = engine.circle(a, b, n);
                if !p.is_zero() {
                    offenders.push(format!("pole {n}: {}", p.display(sys)));
                }
            }
            report.push_bool(
                &format!("{la}(n){lb} = 0 for n >= 2"),
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

    guarded(&mut report, "distinguished central terms", || {
        let resolve = |name: &str| lib.resolve(name);
        closure_check(
            &engine,
            &[],
            &resolve,
            &[
                ClosureEntry::new("F", "F", &[(1, "2 one")]),
                ClosureEntry::new("H", "H", &[(1, "-2 one")]),
            ],
        )
    });
    Ok(report)
}

/// The three bc-bilinears form affine sl2 at level one; in the basis
/// (Ep, -Em, Eh) the levels read off the normalized form directly.
pub fn run_l1sl2(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report("L1sl2", options, &[SystemCase::StandardE])?;
    let lib = FieldLibrary::build(SystemCase::StandardE)?;
    let engine = Engine::new(&lib.system);
    let resolve = |name: &str| lib.resolve(name);

    let fields: Vec<(String, State)> = ["Eh", "Ep", "Em"]
        .iter()
        .map(|n| Ok((n.to_string(), lib.get(n)?.clone())))
        .collect::<Result<_>>()?;
    guarded(&mut report, "triple closes at level one", || {
        closure_check(
            &engine,
            &fields,
            &resolve,
            &[
                ClosureEntry::new("Eh", "Eh", &[(1, "2 one")]),
                ClosureEntry::new("Eh", "Ep", &[(0, "2 Ep")]),
                ClosureEntry::new("Eh", "Em", &[(0, "-2 Em")]),
                ClosureEntry::new("Ep", "Em", &[(1, "- one"), (0, "- Eh")]),
            ],
        )
    });
    guarded(&mut report, "level against the normalized form", || {
        let mut rows = Vec::new();
        for (label, left, right) in [
            ("level: C(Ep, - Em, 1) = one", "C(Ep, - Em, 1)", "one"),
            ("bracket: C(Ep, - Em, 0) = Eh", "C(Ep, - Em, 0)", "Eh"),
        ] {
            let l = lib.eval(&engine, left)?;
            let r = lib.eval(&engine, right)?;
            rows.push(crate::linalg::CheckRow {
                label: label.into(),
                ok: l == r,
                expected: r.display(&lib.system),
                got: l.display(&lib.system),
            });
        }
        Ok(rows)
    });
    Ok(report)
}

/// The charge field of the standard beta-gamma pair generates a rank-one
/// Heisenberg algebra; its self-pairing is computed and recorded. The
/// free rank-one Heisenberg system serves as the reference point.
pub fn run_heisenberg(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report(
        "heisenberg-std",
        options,
        &[SystemCase::StandardS, SystemCase::Heisenberg],
    )?;

    {
        let lib = FieldLibrary::build(SystemCase::StandardS)?;
        let engine = Engine::new(&lib.system);
        let resolve = |name: &str| lib.resolve(name);
        let fields: Vec<(String, State)> = vec![("H".to_string(), lib.get("H")?.clone())];
        guarded(&mut report, "[S-std] H pairing", || {
            closure_check(
                &engine,
                &fields,
                &resolve,
                &[ClosureEntry::new("H", "H", &[(1, "-2 one")])],
            )
        });
    }

    {
        let lib = FieldLibrary::build(SystemCase::Heisenberg)?;
        let engine = Engine::new(&lib.system);
        let resolve = |name: &str| lib.resolve(name);
        guarded(&mut report, "[heisenberg] generator pairing", || {
            closure_check(
                &engine,
                &[],
                &resolve,
                &[ClosureEntry::new("j", "j", &[(1, "one")])],
            )
        });
        let conformal = conformal_check(
            &engine,
            lib.get("L")?,
            Some(scalar::int(1)),
            &[ConformalField::primary(
                "j",
                lib.resolve("j").expect("generator"),
                scalar::int(1),
            )],
        );
        report.push_rows(&conformal.rows);
    }
    Ok(report)
}

/// Symplectic fermions carry a Virasoro element of central charge -2 and a
/// primary weight-3 field; rescaled by the square root of six, the pair
/// closes with purely rational structure constants.
pub fn run_w3(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report("w3-minus2", options, &[SystemCase::SymplecticFermions])?;
    let lib = FieldLibrary::build(SystemCase::SymplecticFermions)?;
    let engine = Engine::new(&lib.system);
    let resolve = |name: &str| lib.resolve(name);

    let fields: Vec<(String, State)> = vec![
        ("L".to_string(), lib.get("L")?.clone()),
        ("Wp".to_string(), lib.get("Wp")?.clone()),
    ];
    guarded(&mut report, "W3 OPE table at central charge -2", || {
        closure_check(
            &engine,
            &fields,
            &resolve,
            &[
                ClosureEntry::new("chip", "chim", &[(1, "- one")]),
                ClosureEntry::new("chip", "chip", &[]),
                ClosureEntry::new("chim", "chim", &[]),
                ClosureEntry::new("L", "L", &[(3, "- one"), (1, "2 L"), (0, "d(L)")]),
                ClosureEntry::new("L", "Wp", &[(1, "3 Wp"), (0, "d(Wp)")]),
                ClosureEntry::new("L", "chip", &[(1, "chip"), (0, "d(chip)")]),
                ClosureEntry::new("L", "chim", &[(1, "chim"), (0, "d(chim)")]),
                ClosureEntry::new(
                    "Wp",
                    "Wp",
                    &[
                        (5, "-4 one"),
                        (3, "12 L"),
                        (2, "6 d(L)"),
                        (1, "16 W(L, L) - 3 d2(L)"),
                        (0, "8 d(W(L, L)) - 2 d3(L)"),
                    ],
                ),
            ],
        )
    });

    let conformal = conformal_check(
        &engine,
        lib.get("L")?,
        Some(scalar::int(-2)),
        &[
            ConformalField::primary("Wp", lib.get("Wp")?.clone(), scalar::int(3)),
            ConformalField::primary("chip", lib.resolve("chip").expect("generator"), scalar::int(1)),
            ConformalField::primary("chim", lib.resolve("chim").expect("generator"), scalar::int(1)),
        ],
    );
    report.push_rows(&conformal.rows);
    Ok(report)
}
