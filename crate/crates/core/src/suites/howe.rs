//! Desk-scale double-commutant check in the adjoint tensor system. One
//! direction: inside each low grade, the joint annihilator of the diagonal
//! currents and the eight commutant generators must coincide with the
//! beta-gamma coset slice transported into the tensor system. The other:
//! the joint annihilator of the currents and the v-family recovers the
//! commutant generators themselves.

use std::collections::BTreeMap;

use super::{guarded, new_report, SuiteOptions};
use crate::catalog::{FieldLibrary, SystemCase};
use crate::error::{Error, Result};
use crate::linalg::{
    annihilator_slice, reduced_row_space, span_coefficients, transport_monomial, CheckRow,
    GradeQuery, ModeRange,
};
use crate::report::SuiteReport;
use crate::scalar::{self, Scalar};
use crate::state::{State, WeightAssignment};
use crate::wick::Engine;

const COMMUTANT_GENERATORS: [&str; 8] = ["F", "L", "G", "Gbar", "X", "Xbar", "Y", "Ybar"];

pub fn run(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report(
        "howe-desk",
        options,
        &[SystemCase::AdjointW, SystemCase::AdjointS],
    )?;
    let w_lib = FieldLibrary::build(SystemCase::AdjointW)?;
    let s_lib = FieldLibrary::build(SystemCase::AdjointS)?;
    let w_engine = Engine::new(&w_lib.system);
    let s_engine = Engine::new(&s_lib.system);
    let w_weights = WeightAssignment::default_for(&w_lib.system);
    let s_weights = WeightAssignment::default_for(&s_lib.system);

    let mut left_annihilators: Vec<State> = Vec::new();
    for name in ["Th_W_x", "Th_W_y", "Th_W_h"] {
        left_annihilators.push(w_lib.get(name)?.clone());
    }
    for name in COMMUTANT_GENERATORS {
        left_annihilators.push(w_lib.get(name)?.clone());
    }
    let mut s_thetas: Vec<State> = Vec::new();
    for name in s_lib.theta_names() {
        s_thetas.push(s_lib.get(name)?.clone());
    }

    let half_max = options.cutoff_half_steps(4).max(0);
    let h_max = half_max + 2;

    for half in 0..=half_max {
        for h in -h_max..=h_max {
            guarded(
                &mut report,
                &format!("(weight {half}/2, H = {h}): slices match"),
                || {
                    let weight = scalar::frac(half, 2);
                    let w_query = GradeQuery::new(
                        &w_lib.system,
                        weight.clone(),
                        &[("F", 0), ("wh", 0), ("H", h)],
                    )?;
                    let left = annihilator_slice(
                        &w_engine,
                        &left_annihilators,
                        &w_weights,
                        &w_query,
                        ModeRange::FromZero,
                    )?;

                    let s_query =
                        GradeQuery::new(&s_lib.system, weight, &[("wh", 0), ("H", h)])?;
                    let coset = annihilator_slice(
                        &s_engine,
                        &s_thetas,
                        &s_weights,
                        &s_query,
                        ModeRange::FromZero,
                    )?;

                    let index: BTreeMap<_, usize> = left
                        .slice
                        .basis
                        .iter()
                        .cloned()
                        .enumerate()
                        .map(|(i, m)| (m, i))
                        .collect();
                    let ncols = left.slice.dim();
                    let mut rows: Vec<Vec<Scalar>> = Vec::new();
                    for state in coset.states() {
                        let mut row = vec![scalar::int(0); ncols];
                        for (mono, coeff) in state.terms() {
                            let image = transport_monomial(&s_lib.system, &w_lib.system, mono)?;
                            let pos = *index.get(&image).ok_or_else(|| {
                                Error::Other(format!(
                                    "transported monomial leaves the target slice at \
                                     weight {half}/2, H = {h}"
                                ))
                            })?;
                            row[pos] = coeff.clone();
                        }
                        rows.push(row);
                    }
                    let transported = reduced_row_space(&rows, ncols);
                    let equal = transported == left.vectors;
                    Ok(vec![CheckRow {
                        label: format!(
                            "(weight {half}/2, H = {h}): joint annihilator = transported coset slice"
                        ),
                        ok: equal,
                        expected: format!("dim {}, equal row spaces", coset.dim()),
                        got: format!(
                            "dim {}, {}",
                            left.dim(),
                            if equal { "equal" } else { "different" }
                        ),
                    }])
                },
            );
        }
    }

    // Nothing F-charged survives the joint annihilator.
    for f in [1i64, -1] {
        let query = GradeQuery::new(
            &w_lib.system,
            scalar::frac(3, 2),
            &[("F", f), ("wh", 0), ("H", 0)],
        )?;
        let slice = annihilator_slice(
            &w_engine,
            &left_annihilators,
            &w_weights,
            &query,
            ModeRange::FromZero,
        )?;
        report.push_bool(
            &format!("(weight 3/2, F = {f}): joint annihilator is trivial"),
            slice.dim() == 0,
            "dim 0",
            &format!("dim {}", slice.dim()),
        );
    }

    // Reverse direction: annihilating the currents and the v-family
    // recovers the commutant generators in their lowest grades.
    let mut right_annihilators: Vec<State> = Vec::new();
    for name in ["Th_W_x", "Th_W_y", "Th_W_h", "v_x", "v_y", "v_h"] {
        right_annihilators.push(w_lib.get(name)?.clone());
    }
    let reverse_spots: [(i64, i64, Vec<&str>); 3] = [
        (2, 0, vec!["F"]),
        (3, 1, vec!["G"]),
        (4, 0, vec!["L", "d(F)", "W(F, F)"]),
    ];
    for (half, f, members) in reverse_spots {
        guarded(
            &mut report,
            &format!("reverse direction at (weight {half}/2, F = {f})"),
            || {
                let query = GradeQuery::new(
                    &w_lib.system,
                    scalar::frac(half, 2),
                    &[("F", f), ("wh", 0), ("H", 0)],
                )?;
                let slice = annihilator_slice(
                    &w_engine,
                    &right_annihilators,
                    &w_weights,
                    &query,
                    ModeRange::FromZero,
                )?;
                let states = slice.states();
                let mut missing = Vec::new();
                for member in &members {
                    let target = w_lib.eval(&w_engine, member)?;
                    if span_coefficients(&target, &states).is_none() {
                        missing.push(*member);
                    }
                }
                let ok = slice.dim() == members.len() && missing.is_empty();
                Ok(vec![CheckRow {
                    label: format!(
                        "(weight {half}/2, F = {f}): v-family annihilator = span of {}",
                        members.join(", ")
                    ),
                    ok,
                    expected: format!("dim {}, containing all listed fields", members.len()),
                    got: if missing.is_empty() {
                        format!("dim {}", slice.dim())
                    } else {
                        format!("dim {}, missing {}", slice.dim(), missing.join(", "))
                    },
                }])
            },
        );
    }

    Ok(report)
}
