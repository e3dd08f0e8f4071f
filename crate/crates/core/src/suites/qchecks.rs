//! Character identities, and the crosscheck that the same graded
//! dimensions come out of q-series manipulation and out of exact
//! annihilator kernels.

use super::{new_report, SuiteOptions};
use crate::catalog::{FieldLibrary, SystemCase};
use crate::error::Result;
use crate::linalg::{annihilator_slice, span_coefficients, GradeQuery, ModeRange};
use crate::qseries;
use crate::report::{Status, SuiteReport};
use crate::scalar;
use crate::state::{State, WeightAssignment};
use crate::wick::Engine;

pub fn run_characters(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report("characters", options, &[])?;
    let order = (options.cutoff_half_steps(2 * options.qorder) / 2).max(0);

    report.push_bool(
        &format!("Jacobi triple product identity holds to order q^{order}"),
        qseries::jacobi_check(order),
        "product form = theta sum",
        "checked coefficientwise",
    );

    let product = qseries::ch_e_product(order);
    let sum = qseries::ch_e_sum(order);
    report.push_bool(
        "ch[E]: six-factor product form = lattice theta-sum form",
        product.equal_to_order(&sum),
        &format!("{} terms", sum.num_terms()),
        &format!("{} terms", product.num_terms()),
    );

    let invariant = qseries::invariant_extract(&product);
    let cho = qseries::ch_o(order);
    report.push_bool(
        "w-invariant part of ch[E] (w^0 minus w^2 coefficients) = ch[O]",
        invariant.equal_to_order(&cho),
        &format!("{} terms", cho.num_terms()),
        &format!("{} terms", invariant.num_terms()),
    );

    let negatives = invariant
        .terms()
        .chain(cho.terms())
        .filter(|(_, c)| **c < 0)
        .count();
    report.push_bool(
        "every extracted coefficient is a dimension (nonnegative)",
        negatives == 0,
        "no negative coefficients",
        &format!("{negatives} negative"),
    );

    for (z, qhalf, want) in [
        (0i64, 0i64, 1i64),
        (1, 1, 0),
        (-1, 1, 0),
        (0, 2, 1),
        (3, 3, 1),
        (-3, 3, 1),
    ] {
        let anchor = format!("ch[O] coefficient at (charge {z}, weight {qhalf}/2) = {want}");
        if qhalf > cho.qmax_half() {
            report.push(&anchor, Status::Skipped, &want.to_string(), "beyond truncation");
        } else {
            let got = cho.coefficient(z, 0, qhalf);
            report.push_bool(&anchor, got == want, &want.to_string(), &got.to_string());
        }
    }
    Ok(report)
}

/// Every grade in the window (weight <= 3, |F| <= 3) of the adjoint
/// bc-system: the space of sl2-invariant vectors, computed as the kernel
/// of the three current zero modes, must be as large as ch[O] says. Spot
/// grades additionally pin the full commutant (all nonnegative modes) and
/// its witnesses.
pub fn run_dims(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report("dims-crosscheck", options, &[SystemCase::AdjointE])?;
    let lib = FieldLibrary::build(SystemCase::AdjointE)?;
    let engine = Engine::new(&lib.system);
    let weights = WeightAssignment::default_for(&lib.system);

    let half_max = options.cutoff_half_steps(6).max(0);
    let order = options.qorder.max((half_max + 1) / 2);
    let cho = qseries::ch_o(order);

    let mut thetas: Vec<State> = Vec::new();
    for name in lib.theta_names() {
        thetas.push(lib.get(name)?.clone());
    }

    for half in 0..=half_max {
        for f in -3..=3i64 {
            let query = GradeQuery::new(&lib.system, scalar::frac(half, 2), &[("F", f)])?;
            let slice = annihilator_slice(&engine, &thetas, &weights, &query, ModeRange::ZeroOnly)?;
            let want = cho.coefficient(f, 0, half);
            report.push_bool(
                &format!(
                    "invariant dimension at (weight {half}/2, F = {f}) = ch[O] coefficient"
                ),
                slice.dim() as i64 == want,
                &want.to_string(),
                &slice.dim().to_string(),
            );
        }
    }

    let spots: [(i64, i64, i64, Option<&str>); 5] = [
        (2, 0, 1, Some("F")),
        (3, 3, 1, Some("Cccc")),
        (3, -3, 1, Some("Cbbb")),
        (1, 1, 0, None),
        (1, -1, 0, None),
    ];
    for (half, f, want, witness) in spots {
        let query = GradeQuery::new(&lib.system, scalar::frac(half, 2), &[("F", f)])?;
        let slice = annihilator_slice(&engine, &thetas, &weights, &query, ModeRange::FromZero)?;
        let mut ok = slice.dim() as i64 == want;
        let mut got = format!("dim {}", slice.dim());
        let mut expected = format!("dim {want}");
        if let Some(name) = witness {
            expected.push_str(&format!(", spanned by {name}"));
            let inside = span_coefficients(lib.get(name)?, &slice.states()).is_some();
            got.push_str(if inside {
                ", contains it"
            } else {
                ", does not contain it"
            });
            ok = ok && inside;
        }
        report.push_bool(
            &format!("commutant dimension at (weight {half}/2, F = {f})"),
            ok,
            &expected,
            &got,
        );
    }

    // The lowest grade where group invariance outruns the full commutant.
    for f in [1i64, -1] {
        let query = GradeQuery::new(&lib.system, scalar::frac(3, 2), &[("F", f)])?;
        let inv = annihilator_slice(&engine, &thetas, &weights, &query, ModeRange::ZeroOnly)?;
        let com = annihilator_slice(&engine, &thetas, &weights, &query, ModeRange::FromZero)?;
        report.push_bool(
            &format!(
                "(weight 3/2, F = {f}): invariants strictly exceed the commutant slice"
            ),
            inv.dim() == 1 && com.dim() == 0,
            "invariant dim 1, commutant dim 0",
            &format!("invariant dim {}, commutant dim {}", inv.dim(), com.dim()),
        );
    }
    Ok(report)
}
