//! Randomized property checks of the circle-product calculus. These are the
//! engine's own oracle and run against every built-in system; any sign error
//! in the mode algebra surfaces here before a table suite ever runs.

use super::{new_report, SuiteOptions};
use crate::catalog::{build_system, SystemCase};
use crate::error::Result;
use crate::report::SuiteReport;
use crate::sample::Sampler;
use crate::scalar::{self, Scalar};
use crate::state::{grade_of, State, WeightAssignment};
use crate::system::FreeFieldSystem;
use crate::wick::Engine;

const DEPTH_BOUND: i64 = 4;

/// Accumulates one law over all sampled pairs: pass count plus the first
/// counterexample, which is all a report needs.
struct Law {
    anchor: &'static str,
    checked: usize,
    failure: Option<String>,
}

impl Law {
    fn new(anchor: &'static str) -> Self {
        Law {
            anchor,
            checked: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }
}

pub fn run(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = new_report("engine-invariants", options, &[])?;
    for (offset, case) in SystemCase::all().iter().enumerate() {
        let sys = build_system(*case)?;
        let engine = Engine::new(&sys);
        let weights = WeightAssignment::default_for(&sys);
        let mut sampler = Sampler::new(options.seed.wrapping_add(offset as u64), DEPTH_BOUND);

        let mut laws = [
            Law::new("one(n)a = delta(n,-1) a and a(n)one = delta(n,-1) a"),
            Law::new("(d a)(n)b = -n a(n-1)b and d(a(n)b) = (d a)(n)b + a(n)(d b)"),
            Law::new("b(n)a = (-1)^(|a||b|) sum_j (-1)^(n+j+1)/j! d^j(a(n+j)b)"),
            Law::new("a(m)b(p)c -+ b(p)a(m)c = sum_k binom(m,k) (a(k)b)(m+p-k)c"),
            Law::new("W(a,b) - (-1)^(|a||b|) W(b,a) = sum_j (-1)^j d^(j+1)(a(j)b)/(j+1)!"),
            Law::new("grade(a(n)b) = grade(a) + grade(b) - (n+1) in weight"),
            Law::new("a(n)b = 0 for n >= depth(a) + depth(b)"),
        ];

        for _ in 0..options.pairs {
            let a = sampler.state(&sys, &weights);
            let b = sampler.state(&sys, &weights);
            let c = sampler.state(&sys, &weights);
            check_units(&engine, &a, &mut laws[0]);
            check_derivative(&engine, &a, &b, &mut laws[1]);
            check_skew(&engine, &sys, &a, &b, &mut laws[2]);
            check_commutator(&engine, &sys, &a, &b, &c, &mut laws[3]);
            check_quasi_commutativity(&engine, &sys, &a, &b, &mut laws[4]);
            check_weight_additivity(&engine, &sys, &weights, &a, &b, &mut laws[5]);
            check_locality(&engine, &a, &b, &mut laws[6]);
        }

        for law in laws {
            let expected = format!("identity on {} sampled pairs, depth <= {DEPTH_BOUND}", options.pairs);
            match law.failure {
                None => report.push_bool(
                    &format!("[{}] {}", case.name(), law.anchor),
                    true,
                    &expected,
                    &format!("holds ({} instances)", law.checked),
                ),
                Some(detail) => report.push_bool(
                    &format!("[{}] {}", case.name(), law.anchor),
                    false,
                    &expected,
                    &truncate(&detail),
                ),
            }
        }
    }
    Ok(report)
}

fn truncate(text: &str) -> String {
    if text.len() <= 240 {
        text.to_string()
    } else {
        format!("{}...", &text[..240])
    }
}

fn sign_of(sys: &FreeFieldSystem, a: &State, b: &State) -> Option<Scalar> {
    let pa = a.parity(sys)?;
    let pb = b.parity(sys)?;
    Some(if pa.is_odd() && pb.is_odd() {
        scalar::int(-1)
    } else {
        scalar::int(1)
    })
}

fn check_units(engine: &Engine, a: &State, law: &mut Law) {
    let one = State::vacuum();
    for n in -3..=2 {
        let want = if n == -1 { a.clone() } else { State::zero() };
        let got = engine.circle(&one, a, n);
        law.record(got == want, || format!("one({n})a != delta: n = {n}"));
        if n >= -1 {
            let got = engine.circle(a, &one, n);
            law.record(got == want, || format!("a({n})one != delta: n = {n}"));
        }
    }
}

fn check_derivative(engine: &Engine, a: &State, b: &State, law: &mut Law) {
    let da = engine.derivative(a);
    let db = engine.derivative(b);
    for n in -2..=engine.pole_bound(a, b) {
        let lhs = engine.circle(&da, b, n);
        let rhs = engine.circle(a, b, n - 1).scale(&scalar::int(-n));
        law.record(lhs == rhs, || format!("(d a)({n})b mismatch"));
        let lhs = engine.derivative(&engine.circle(a, b, n));
        let rhs = {
            let mut s = engine.circle(&da, b, n);
            s.add_assign(&engine.circle(a, &db, n));
            s
        };
        law.record(lhs == rhs, || format!("d(a({n})b) is not a derivation"));
    }
}

fn check_skew(engine: &Engine, sys: &FreeFieldSystem, a: &State, b: &State, law: &mut Law) {
    let Some(sign) = sign_of(sys, a, b) else {
        return;
    };
    let bound = engine.pole_bound(a, b);
    for n in -1..=bound {
        let lhs = engine.circle(b, a, n);
        let mut rhs = State::zero();
        let mut j = 0;
        while n + j <= bound {
            let mut term = engine.circle(a, b, n + j);
            for _ in 0..j {
                term = engine.derivative(&term);
            }
            let parity = if (n + j + 1) % 2 == 0 {
                scalar::int(1)
            } else {
                scalar::int(-1)
            };
            rhs.add_scaled(&(parity * scalar::inv_factorial(j as u32)), &term);
            j += 1;
        }
        law.record(lhs == rhs.scale(&sign), || format!("skew fails at n = {n}"));
    }
}

fn check_commutator(
    engine: &Engine,
    sys: &FreeFieldSystem,
    a: &State,
    b: &State,
    c: &State,
    law: &mut Law,
) {
    let Some(sign) = sign_of(sys, a, b) else {
        return;
    };
    for (m, p) in [(0i64, 0i64), (1, 0), (0, 1), (2, 1)] {
        let mut lhs = engine.field_mode_apply(a, m, &engine.field_mode_apply(b, p, c));
        lhs.add_scaled(
            &(-sign.clone()),
            &engine.field_mode_apply(b, p, &engine.field_mode_apply(a, m, c)),
        );
        let mut rhs = State::zero();
        for k in 0..=m.min(engine.pole_bound(a, b)) {
            let binom = scalar::binomial(m, k as u32);
            if scalar::is_zero(&binom) {
                continue;
            }
            rhs.add_scaled(
                &binom,
                &engine.field_mode_apply(&engine.circle(a, b, k), m + p - k, c),
            );
        }
        law.record(lhs == rhs, || format!("commutator fails at m = {m}, p = {p}"));
    }
}

fn check_quasi_commutativity(
    engine: &Engine,
    sys: &FreeFieldSystem,
    a: &State,
    b: &State,
    law: &mut Law,
) {
    let Some(sign) = sign_of(sys, a, b) else {
        return;
    };
    let mut lhs = engine.wick(a, b);
    lhs.add_scaled(&(-sign), &engine.wick(b, a));
    let mut rhs = State::zero();
    for j in 0..engine.pole_bound(a, b) {
        let mut term = engine.circle(a, b, j);
        for _ in 0..=j {
            term = engine.derivative(&term);
        }
        let parity = if j % 2 == 0 {
            scalar::int(1)
        } else {
            scalar::int(-1)
        };
        rhs.add_scaled(&(parity * scalar::inv_factorial(j as u32 + 1)), &term);
    }
    law.record(lhs == rhs, || "quasi-commutativity fails".into());
}

fn check_weight_additivity(
    engine: &Engine,
    sys: &FreeFieldSystem,
    weights: &WeightAssignment,
    a: &State,
    b: &State,
    law: &mut Law,
) {
    let (Ok(ga), Ok(gb)) = (grade_of(sys, weights, a), grade_of(sys, weights, b)) else {
        return;
    };
    for n in [-1, 0, 1] {
        let p = engine.circle(a, b, n);
        if p.is_zero() {
            law.record(true, String::new);
            continue;
        }
        let gp = match grade_of(sys, weights, &p) {
            Ok(g) => g,
            Err(_) => {
                law.record(false, || format!("a({n})b is not grade homogeneous"));
                continue;
            }
        };
        let weight_ok =
            gp.weight == ga.weight.clone() + gb.weight.clone() - scalar::int(n + 1);
        let charges_ok = gp
            .charges
            .iter()
            .zip(ga.charges.iter().zip(gb.charges.iter()))
            .all(|(s, (x, y))| *s == x + y);
        law.record(weight_ok && charges_ok, || {
            format!("grade additivity fails at n = {n}")
        });
    }
}

fn check_locality(engine: &Engine, a: &State, b: &State, law: &mut Law) {
    let d = a.depth() + b.depth();
    for n in [d, d + 1] {
        law.record(engine.circle(a, b, n).is_zero(), || {
            format!("nonzero product above the locality bound, n = {n}")
        });
    }
}
