//! Built-in free-field systems and their named-field libraries.
//!
//!
//! Nine systems around one theme: a bc system E(M), a beta-gamma system
//! S(M) and their tensor product W(M) for M either the adjoint or the
//! standard sl2 module, the rank-6 Heisenberg-plus-fermion realization of
//! the N = 2-style algebra, symplectic fermions, and a single boson.
//! Every library field is recorded as an expression string and then
//! evaluated, so `list --export` shows exactly what was built.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expr;
use crate::lie::{self, LieSuperalgebra, Matrix, Representation};
use crate::scalar::{self, Scalar};
use crate::state::{generator_state, State};
use crate::system::{FreeFieldSystem, GeneratorSpec, Parity};
use crate::wick::Engine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SystemCase {
    AdjointE,
    AdjointS,
    AdjointW,
    StandardE,
    StandardS,
    StandardW,
    OdakeOriginal,
    SymplecticFermions,
    Heisenberg,
}

impl SystemCase {
    pub fn all() -> &'static [SystemCase] {
        &[
            SystemCase::AdjointE,
            SystemCase::AdjointS,
            SystemCase::AdjointW,
            SystemCase::StandardE,
            SystemCase::StandardS,
            SystemCase::StandardW,
            SystemCase::OdakeOriginal,
            SystemCase::SymplecticFermions,
            SystemCase::Heisenberg,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            SystemCase::AdjointE => "E-adjoint",
            SystemCase::AdjointS => "S-adjoint",
            SystemCase::AdjointW => "adjoint",
            SystemCase::StandardE => "E-std",
            SystemCase::StandardS => "S-std",
            SystemCase::StandardW => "standard",
            SystemCase::OdakeOriginal => "odake-original",
            SystemCase::SymplecticFermions => "symplectic-fermions",
            SystemCase::Heisenberg => "heisenberg",
        }
    }

    pub fn parse(name: &str) -> Result<SystemCase> {
        SystemCase::all()
            .iter()
            .copied()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::UnknownCase(name.to_string()))
    }
}

fn gen(name: &str, parity: Parity, weight: Scalar, charges: Vec<i64>) -> GeneratorSpec {
    GeneratorSpec {
        name: name.to_string(),
        parity,
        weight,
        charges,
    }
}

/// bc system on the three-dimensional adjoint module: generators b_x, b_y,
/// b_h and duals c_xp, c_yp, c_hp, charges (F, wh) = (fermion number, sl2
/// h-weight doubled onto the root lattice).
fn adjoint_e() -> Result<FreeFieldSystem> {
    let half = scalar::frac(1, 2);
    let gens = vec![
        gen("b_x", Parity::Odd, half.clone(), vec![-1, 2]),
        gen("b_y", Parity::Odd, half.clone(), vec![-1, -2]),
        gen("b_h", Parity::Odd, half.clone(), vec![-1, 0]),
        gen("c_xp", Parity::Odd, half.clone(), vec![1, -2]),
        gen("c_yp", Parity::Odd, half.clone(), vec![1, 2]),
        gen("c_hp", Parity::Odd, half, vec![1, 0]),
    ];
    let mut contractions = Vec::new();
    for (b, c) in [("b_x", "c_xp"), ("b_y", "c_yp"), ("b_h", "c_hp")] {
        contractions.push((b.to_string(), c.to_string(), 0, scalar::int(1)));
        contractions.push((c.to_string(), b.to_string(), 0, scalar::int(1)));
    }
    FreeFieldSystem::new(
        "E-adjoint",
        gens,
        vec!["F".into(), "wh".into()],
        contractions,
    )
}

/// beta-gamma system on the adjoint module at weights (1, 0); H counts
/// gamma minus beta.
fn adjoint_s() -> Result<FreeFieldSystem> {
    let gens = vec![
        gen("beta_x", Parity::Even, scalar::int(1), vec![-1, 2]),
        gen("beta_y", Parity::Even, scalar::int(1), vec![-1, -2]),
        gen("beta_h", Parity::Even, scalar::int(1), vec![-1, 0]),
        gen("gamma_xp", Parity::Even, scalar::int(0), vec![1, -2]),
        gen("gamma_yp", Parity::Even, scalar::int(0), vec![1, 2]),
        gen("gamma_hp", Parity::Even, scalar::int(0), vec![1, 0]),
    ];
    let mut contractions = Vec::new();
    for (b, g) in [
        ("beta_x", "gamma_xp"),
        ("beta_y", "gamma_yp"),
        ("beta_h", "gamma_hp"),
    ] {
        contractions.push((b.to_string(), g.to_string(), 0, scalar::int(1)));
        contractions.push((g.to_string(), b.to_string(), 0, scalar::int(-1)));
    }
    FreeFieldSystem::new(
        "S-adjoint",
        gens,
        vec!["H".into(), "wh".into()],
        contractions,
    )
}

fn standard_e() -> Result<FreeFieldSystem> {
    let half = scalar::frac(1, 2);
    let gens = vec![
        gen("b1", Parity::Odd, half.clone(), vec![-1, 1]),
        gen("b2", Parity::Odd, half.clone(), vec![-1, -1]),
        gen("c1", Parity::Odd, half.clone(), vec![1, -1]),
        gen("c2", Parity::Odd, half, vec![1, 1]),
    ];
    let mut contractions = Vec::new();
    for (b, c) in [("b1", "c1"), ("b2", "c2")] {
        contractions.push((b.to_string(), c.to_string(), 0, scalar::int(1)));
        contractions.push((c.to_string(), b.to_string(), 0, scalar::int(1)));
    }
    FreeFieldSystem::new("E-std", gens, vec!["F".into(), "wh".into()], contractions)
}

fn standard_s() -> Result<FreeFieldSystem> {
    let gens = vec![
        gen("beta1", Parity::Even, scalar::int(1), vec![-1, 1]),
        gen("beta2", Parity::Even, scalar::int(1), vec![-1, -1]),
        gen("gamma1", Parity::Even, scalar::int(0), vec![1, -1]),
        gen("gamma2", Parity::Even, scalar::int(0), vec![1, 1]),
    ];
    let mut contractions = Vec::new();
    for (b, g) in [("beta1", "gamma1"), ("beta2", "gamma2")] {
        contractions.push((b.to_string(), g.to_string(), 0, scalar::int(1)));
        contractions.push((g.to_string(), b.to_string(), 0, scalar::int(-1)));
    }
    FreeFieldSystem::new("S-std", gens, vec!["H".into(), "wh".into()], contractions)
}

/// Rank-6 Heisenberg (three weight-1 pairs with a second-order pole) plus
/// three bc pairs; the original free-field realization of the N = 2-style
/// superconformal algebra with an extra pair of weight-3/2 fields.
fn odake_original() -> Result<FreeFieldSystem> {
    let half = scalar::frac(1, 2);
    let mut gens = Vec::new();
    for i in 1..=3 {
        gens.push(gen(
            &format!("ap{i}"),
            Parity::Even,
            scalar::int(1),
            vec![0],
        ));
    }
    for i in 1..=3 {
        gens.push(gen(
            &format!("am{i}"),
            Parity::Even,
            scalar::int(1),
            vec![0],
        ));
    }
    for i in 1..=3 {
        gens.push(gen(&format!("b{i}"), Parity::Odd, half.clone(), vec![1]));
    }
    for i in 1..=3 {
        gens.push(gen(&format!("c{i}"), Parity::Odd, half.clone(), vec![-1]));
    }
    let mut contractions = Vec::new();
    for i in 1..=3 {
        contractions.push((format!("ap{i}"), format!("am{i}"), 1, scalar::int(1)));
        contractions.push((format!("am{i}"), format!("ap{i}"), 1, scalar::int(1)));
        contractions.push((format!("b{i}"), format!("c{i}"), 0, scalar::int(1)));
        contractions.push((format!("c{i}"), format!("b{i}"), 0, scalar::int(1)));
    }
    FreeFieldSystem::new("odake-original", gens, vec!["F".into()], contractions)
}

fn symplectic_fermions() -> Result<FreeFieldSystem> {
    FreeFieldSystem::new(
        "symplectic-fermions",
        vec![
            gen("chip", Parity::Odd, scalar::int(1), vec![1]),
            gen("chim", Parity::Odd, scalar::int(1), vec![-1]),
        ],
        vec!["Z".into()],
        // The pairing sign makes W(chip, chim) the conformal vector of
        // central charge -2; with the opposite sign the conformal vector
        // would be its negative.
        vec![
            ("chip".into(), "chim".into(), 1, scalar::int(-1)),
            ("chim".into(), "chip".into(), 1, scalar::int(1)),
        ],
    )
}

fn heisenberg() -> Result<FreeFieldSystem> {
    FreeFieldSystem::new(
        "heisenberg",
        vec![gen("j", Parity::Even, scalar::int(1), vec![])],
        vec![],
        vec![("j".into(), "j".into(), 1, scalar::int(1))],
    )
}

pub fn build_system(case: SystemCase) -> Result<FreeFieldSystem> {
    match case {
        SystemCase::AdjointE => adjoint_e(),
        SystemCase::AdjointS => adjoint_s(),
        SystemCase::AdjointW => FreeFieldSystem::tensor("adjoint", &adjoint_e()?, &adjoint_s()?),
        SystemCase::StandardE => standard_e(),
        SystemCase::StandardS => standard_s(),
        SystemCase::StandardW => {
            FreeFieldSystem::tensor("standard", &standard_e()?, &standard_s()?)
        }
        SystemCase::OdakeOriginal => odake_original(),
        SystemCase::SymplecticFermions => symplectic_fermions(),
        SystemCase::Heisenberg => heisenberg(),
    }
}

/// Renders a linear combination as expression text, e.g.
/// `W(b_h, c_yp) - 2 W(b_x, c_hp)`.
fn combo(terms: &[(Scalar, String)]) -> String {
    let mut out = String::new();
    for (coeff, atom) in terms {
        if scalar::is_zero(coeff) {
            continue;
        }
        let negative = scalar::signum(coeff) < 0;
        if out.is_empty() {
            if negative {
                out.push_str("- ");
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let magnitude = if negative {
            -coeff.clone()
        } else {
            coeff.clone()
        };
        if !scalar::is_one(&magnitude) {
            out.push_str(&scalar::render(&magnitude));
            out.push(' ');
        }
        out.push_str(atom);
    }
    out
}

/// The current attached to xi acting on a module M: for a bc system,
/// Theta^xi = sum_i :b^{rho(xi) x_i} c^{x_i'}:, and for a beta-gamma system
/// the same sum with an overall minus sign. `left`/`right` list the field
/// names matching the module basis and its dual.
pub fn theta_formula(
    rep: &Representation,
    xi: usize,
    left: &[&str],
    right: &[&str],
    negate: bool,
) -> String {
    let mut terms = Vec::new();
    for i in 0..rep.dim {
        for j in 0..rep.dim {
            let mut coeff = rep.matrices[xi][j][i].clone();
            if scalar::is_zero(&coeff) {
                continue;
            }
            if negate {
                coeff = -coeff;
            }
            terms.push((coeff, format!("W({}, {})", left[j], right[i])));
        }
    }
    combo(&terms)
}

/// Sugawara vector for a current family: the formula
/// 1/(2(k + h')) sum_xi :X^xi X^{xi'}: with xi' the dual basis w.r.t.
/// `form`, plus the predicted central charge k sdim(g) / (k + h').
/// Fails at critical level k = -h'.
pub fn sugawara_formula(
    alg: &LieSuperalgebra,
    form: &Matrix,
    level: &Scalar,
    currents: &[&str],
) -> Result<(String, Scalar)> {
    let hv = alg.dual_coxeter(form)?;
    let shifted = level.clone() + &hv;
    if scalar::is_zero(&shifted) {
        return Err(Error::CriticalLevel {
            level: scalar::render(level),
        });
    }
    let prefactor = scalar::int(1) / (scalar::int(2) * &shifted);
    let duals = alg.dual_basis_for(form)?;
    let mut terms = Vec::new();
    for (i, dual) in duals.iter().enumerate() {
        for (j, coeff) in dual.iter().enumerate() {
            if scalar::is_zero(coeff) {
                continue;
            }
            terms.push((
                prefactor.clone() * coeff,
                format!("W({}, {})", currents[i], currents[j]),
            ));
        }
    }
    let mut sdim = scalar::int(0);
    for p in &alg.parity {
        sdim += scalar::int(if p.is_odd() { -1 } else { 1 });
    }
    let c = level.clone() * sdim / shifted;
    Ok((combo(&terms), c))
}

/// A built system together with its library of named fields. Fields are
/// defined by expression strings and evaluated in order, so every entry
/// can be exported and re-parsed.
#[derive(Debug)]
pub struct FieldLibrary {
    pub case: SystemCase,
    pub system: FreeFieldSystem,
    order: Vec<String>,
    fields: BTreeMap<String, State>,
    formulas: BTreeMap<String, String>,
}

impl FieldLibrary {
    pub fn build(case: SystemCase) -> Result<FieldLibrary> {
        let system = build_system(case)?;
        let defs = field_definitions(case)?;
        let mut lib = FieldLibrary {
            case,
            system,
            order: Vec::new(),
            fields: BTreeMap::new(),
            formulas: BTreeMap::new(),
        };
        let engine = Engine::new(&lib.system);
        for (name, formula) in defs {
            let state = {
                let fields = &lib.fields;
                let system = &lib.system;
                expr::eval_str(&formula, &engine, &|n| {
                    fields
                        .get(n)
                        .cloned()
                        .or_else(|| generator_state(system, n).ok())
                })?
            };
            lib.order.push(name.clone());
            lib.fields.insert(name.clone(), state);
            lib.formulas.insert(name, formula);
        }
        Ok(lib)
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn get(&self, name: &str) -> Result<&State> {
        self.fields
            .get(name)
            .ok_or_else(|| Error::UnknownField(name.to_string()))
    }

    pub fn formula(&self, name: &str) -> Option<&str> {
        self.formulas.get(name).map(|s| s.as_str())
    }

    /// Named fields first, bare generators as a fallback.
    pub fn resolve(&self, name: &str) -> Option<State> {
        self.fields
            .get(name)
            .cloned()
            .or_else(|| generator_state(&self.system, name).ok())
    }

    pub fn eval(&self, engine: &Engine, text: &str) -> Result<State> {
        expr::eval_str(text, engine, &|n| self.resolve(n))
    }

    /// The sl2 current family of the case, for annihilator slices.
    pub fn theta_names(&self) -> &'static [&'static str] {
        match self.case {
            SystemCase::AdjointE | SystemCase::AdjointS => &["Th_x", "Th_y", "Th_h"],
            SystemCase::StandardE | SystemCase::StandardS => &["Th_x", "Th_y", "Th_h"],
            SystemCase::AdjointW | SystemCase::StandardW => &["Th_W_x", "Th_W_y", "Th_W_h"],
            _ => &[],
        }
    }
}

const XI: [&str; 3] = ["x", "y", "h"];

fn push_thetas(
    defs: &mut Vec<(String, String)>,
    rep: &Representation,
    prefix: &str,
    left: &[&str],
    right: &[&str],
    negate: bool,
) {
    for (xi, label) in XI.iter().enumerate() {
        defs.push((
            format!("{prefix}{label}"),
            theta_formula(rep, xi, left, right, negate),
        ));
    }
}

fn field_definitions(case: SystemCase) -> Result<Vec<(String, String)>> {
    let alg = lie::sl2();
    let adjoint = lie::sl2_adjoint_rep();
    let standard = lie::sl2_standard_rep();
    let trace_adj = adjoint.trace_form(3);
    let normalized = lie::sl2_normalized_form();
    let mut defs: Vec<(String, String)> = Vec::new();
    macro_rules! push {
        ($name:expr, $formula:expr $(,)?) => {
            defs.push(($name.into(), $formula.into()))
        };
    }

    let adj_b = ["b_x", "b_y", "b_h"];
    let adj_c = ["c_xp", "c_yp", "c_hp"];
    let adj_beta = ["beta_x", "beta_y", "beta_h"];
    let adj_gamma = ["gamma_xp", "gamma_yp", "gamma_hp"];
    let std_b = ["b1", "b2"];
    let std_c = ["c1", "c2"];
    let std_beta = ["beta1", "beta2"];
    let std_gamma = ["gamma1", "gamma2"];

    match case {
        SystemCase::AdjointE => {
            push_thetas(&mut defs, &adjoint, "Th_", &adj_b, &adj_c, false);
            defs.push((
                "F".into(),
                "- W(b_h, c_hp) - W(b_x, c_xp) - W(b_y, c_yp)".into(),
            ));
            defs.push(("Cbbb".into(), "W(b_x, b_y, b_h)".into()));
            defs.push(("Cccc".into(), "W(c_xp, c_yp, c_hp)".into()));
            defs.push((
                "L_E".into(),
                "- W(b_h, d(c_hp)) - W(b_x, d(c_xp)) - W(b_y, d(c_yp))".into(),
            ));
            let (sug, _) =
                sugawara_formula(&alg, &trace_adj, &scalar::int(1), &["Th_x", "Th_y", "Th_h"])?;
            defs.push(("L_sug".into(), sug));
            defs.push(("L_Egt".into(), "L_E - L_sug".into()));
        }
        SystemCase::AdjointS => {
            push_thetas(&mut defs, &adjoint, "Th_", &adj_beta, &adj_gamma, true);
            push_adjoint_v(&mut defs);
            defs.push((
                "L_S".into(),
                "W(beta_h, d(gamma_hp)) + W(beta_x, d(gamma_xp)) + W(beta_y, d(gamma_yp))".into(),
            ));
            let (sug, _) = sugawara_formula(
                &alg,
                &trace_adj,
                &scalar::int(-1),
                &["Th_x", "Th_y", "Th_h"],
            )?;
            defs.push(("L_sug".into(), sug));
            defs.push(("L_Sgt".into(), "L_S - L_sug".into()));
            let (vsug, _) = sugawara_formula(
                &alg,
                &normalized,
                &scalar::frac(-3, 2),
                &["v_x", "v_y", "v_h"],
            )?;
            defs.push(("L_vsug".into(), vsug));
        }
        SystemCase::AdjointW => {
            push_thetas(&mut defs, &adjoint, "Th_E_", &adj_b, &adj_c, false);
            push_thetas(&mut defs, &adjoint, "Th_S_", &adj_beta, &adj_gamma, true);
            for label in XI {
                defs.push((
                    format!("Th_W_{label}"),
                    format!("Th_E_{label} + Th_S_{label}"),
                ));
            }
            push_adjoint_v(&mut defs);
            push!("F", "- W(b_h, c_hp) - W(b_x, c_xp) - W(b_y, c_yp)");
            push!(
                "Q_gb",
                "W(gamma_hp, b_h) + W(gamma_xp, b_x) + W(gamma_yp, b_y)",
            );
            push!(
                "Q_bb",
                "W(beta_h, b_h) + 2 W(beta_x, b_y) + 2 W(beta_y, b_x)",
            );
            push!(
                "Q_gc",
                "W(gamma_hp, c_hp) + 1/2 W(gamma_xp, c_yp) + 1/2 W(gamma_yp, c_xp)",
            );
            push!(
                "Q_bc",
                "W(beta_h, c_hp) + W(beta_x, c_xp) + W(beta_y, c_yp)",
            );
            push!("Cbbb", "W(b_x, b_y, b_h)");
            push!("Cccc", "W(c_xp, c_yp, c_hp)");
            push!(
                "Cg_bb",
                "- W(gamma_hp, b_x, b_y) + 1/2 W(gamma_xp, b_x, b_h) - 1/2 W(gamma_yp, b_y, b_h)",
            );
            push!(
                "Cb_bb",
                "W(beta_h, b_x, b_y) + W(beta_x, b_y, b_h) - W(beta_y, b_x, b_h)",
            );
            push!(
                "Cg_cc",
                "- W(gamma_hp, c_xp, c_yp) - W(gamma_xp, c_yp, c_hp) + W(gamma_yp, c_xp, c_hp)",
            );
            push!(
                "Cb_cc",
                "W(beta_h, c_xp, c_yp) - 2 W(beta_x, c_xp, c_hp) + 2 W(beta_y, c_yp, c_hp)",
            );
            push!(
                "G",
                "W(beta_h, gamma_xp, c_yp) - W(beta_h, gamma_yp, c_xp) \
                 + 2 W(beta_x, gamma_hp, c_xp) - 2 W(beta_x, gamma_xp, c_hp) \
                 - 2 W(beta_y, gamma_hp, c_yp) + 2 W(beta_y, gamma_yp, c_hp) \
                 - W(b_h, c_xp, c_yp) + 2 W(b_x, c_xp, c_hp) - 2 W(b_y, c_yp, c_hp)",
            );
            push!(
                "Gbar",
                "1/2 (- W(beta_h, gamma_xp, b_x) + W(beta_h, gamma_yp, b_y) \
                 - 2 W(beta_x, gamma_hp, b_y) + W(beta_x, gamma_xp, b_h) \
                 + 2 W(beta_y, gamma_hp, b_x) - W(beta_y, gamma_yp, b_h) \
                 + W(b_x, b_h, c_xp) - 2 W(b_x, b_y, c_hp) - W(b_y, b_h, c_yp))",
            );
            push!("X", "Cccc");
            push!("Xbar", "Cbbb");
            push!("Y", "1/2 W(Q_bc, Q_gc)");
            push!("Ybar", "- 1/2 W(Q_gb, Q_bb)");
            push!(
                "L_E",
                "- W(b_h, d(c_hp)) - W(b_x, d(c_xp)) - W(b_y, d(c_yp))"
            );
            push!(
                "L_S",
                "W(beta_h, d(gamma_hp)) + W(beta_x, d(gamma_xp)) + W(beta_y, d(gamma_yp))",
            );
            push!("L_W", "L_E + L_S");
            let (sug_e, _) = sugawara_formula(
                &alg,
                &trace_adj,
                &scalar::int(1),
                &["Th_E_x", "Th_E_y", "Th_E_h"],
            )?;
            defs.push(("L_sug_E".into(), sug_e));
            let (sug_s, _) = sugawara_formula(
                &alg,
                &trace_adj,
                &scalar::int(-1),
                &["Th_S_x", "Th_S_y", "Th_S_h"],
            )?;
            defs.push(("L_sug_S".into(), sug_s));
            let (sug_w, _) = sugawara_formula(
                &alg,
                &normalized,
                &scalar::int(0),
                &["Th_W_x", "Th_W_y", "Th_W_h"],
            )?;
            defs.push(("L_sug_W".into(), sug_w));
            defs.push(("L_Egt".into(), "L_E - L_sug_E".into()));
            defs.push(("L_Sgt".into(), "L_S - L_sug_S".into()));
            defs.push(("L_Wgt".into(), "L_W - L_sug_W".into()));
            push!("L", "C(G, Gbar, 0) - 1/2 d(F)");
        }
        SystemCase::StandardE => {
            push_thetas(&mut defs, &standard, "Th_", &std_b, &std_c, false);
            push!("F", "- W(b1, c1) - W(b2, c2)");
            push!("Eh", "W(b1, c1) + W(b2, c2)");
            push!("Ep", "W(b1, b2)");
            push!("Em", "W(c1, c2)");
        }
        SystemCase::StandardS => {
            push_thetas(&mut defs, &standard, "Th_", &std_beta, &std_gamma, true);
            push!("H", "W(beta1, gamma1) + W(beta2, gamma2)");
        }
        SystemCase::StandardW => {
            push_thetas(&mut defs, &standard, "Th_E_", &std_b, &std_c, false);
            push_thetas(&mut defs, &standard, "Th_S_", &std_beta, &std_gamma, true);
            for label in XI {
                defs.push((
                    format!("Th_W_{label}"),
                    format!("Th_E_{label} + Th_S_{label}"),
                ));
            }
            push!("H", "W(beta1, gamma1) + W(beta2, gamma2)");
            push!("F", "- W(b1, c1) - W(b2, c2)");
            push!("Ep", "W(b1, b2)");
            push!("Em", "W(c1, c2)");
            push!("Q1m", "W(beta1, c1) + W(beta2, c2)");
            push!("Q1p", "W(b1, gamma1) + W(b2, gamma2)");
            push!("Q2p", "W(b1, beta2) - W(b2, beta1)");
            push!("Q2m", "W(gamma1, c2) - W(gamma2, c1)");
        }
        SystemCase::OdakeOriginal => {
            push!("G", "W(b1, ap1) + W(b2, ap2) + W(b3, ap3)");
            push!("Gbar", "W(c1, am1) + W(c2, am2) + W(c3, am3)");
            push!("X", "W(b1, b2, b3)");
            push!("Xbar", "W(c1, c2, c3)");
            push!("F", "C(G, Gbar, 1)");
            push!("L", "C(G, Gbar, 0) - 1/2 d(F)");
            push!("Y", "1/2 C(Gbar, X, 0)");
            push!("Ybar", "1/2 C(G, Xbar, 0)");
        }
        SystemCase::SymplecticFermions => {
            push!("L", "W(chip, chim)");
            push!("Wp", "W(d(chip), chim) - W(chip, d(chim))");
        }
        SystemCase::Heisenberg => {
            push!("L", "1/2 W(j, j)");
        }
    }
    Ok(defs)
}

/// The affine sl2 currents inside the adjoint beta-gamma system at level
/// -3/2 (quadratics in the ghosts).
fn push_adjoint_v(defs: &mut Vec<(String, String)>) {
    defs.push((
        "v_x".into(),
        "1/2 (W(gamma_hp, gamma_hp) + W(gamma_xp, gamma_yp))".into(),
    ));
    defs.push((
        "v_y".into(),
        "- 1/2 (W(beta_h, beta_h) + 4 W(beta_x, beta_y))".into(),
    ));
    defs.push((
        "v_h".into(),
        "W(beta_h, gamma_hp) + W(beta_x, gamma_xp) + W(beta_y, gamma_yp)".into(),
    ));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use crate::state::states_equal;

    #[test]
    fn all_systems_build() {
        for case in SystemCase::all() {
            let sys = build_system(*case).unwrap();
            assert!(!sys.generators.is_empty(), "{}", case.name());
            assert_eq!(SystemCase::parse(case.name()).unwrap(), *case);
        }
        assert!(SystemCase::parse("nope").is_err());
    }

    #[test]
    fn adjoint_tensor_merges_charges() {
        let sys = build_system(SystemCase::AdjointW).unwrap();
        assert_eq!(sys.charge_names, vec!["F", "wh", "H"]);
        assert_eq!(sys.generators.len(), 12);
        let b_x = sys.gen_index("b_x").unwrap();
        assert_eq!(sys.generators[b_x].charges, vec![-1, 2, 0]);
        let beta_x = sys.gen_index("beta_x").unwrap();
        assert_eq!(sys.generators[beta_x].charges, vec![0, 2, -1]);
    }

    #[test]
    fn theta_formulas_match_their_displayed_forms() {
        let e = FieldLibrary::build(SystemCase::AdjointE).unwrap();
        assert_eq!(e.formula("Th_x").unwrap(), "W(b_h, c_yp) - 2 W(b_x, c_hp)");
        assert_eq!(
            e.formula("Th_y").unwrap(),
            "- W(b_h, c_xp) + 2 W(b_y, c_hp)"
        );
        assert_eq!(
            e.formula("Th_h").unwrap(),
            "2 W(b_x, c_xp) - 2 W(b_y, c_yp)"
        );
        let s = FieldLibrary::build(SystemCase::AdjointS).unwrap();
        assert_eq!(
            s.formula("Th_x").unwrap(),
            "- W(beta_h, gamma_yp) + 2 W(beta_x, gamma_hp)"
        );
        assert_eq!(
            s.formula("Th_y").unwrap(),
            "W(beta_h, gamma_xp) - 2 W(beta_y, gamma_hp)"
        );
        assert_eq!(
            s.formula("Th_h").unwrap(),
            "- 2 W(beta_x, gamma_xp) + 2 W(beta_y, gamma_yp)"
        );
    }

    #[test]
    fn charge_currents_reproduce_declared_charges() {
        let lib = FieldLibrary::build(SystemCase::AdjointW).unwrap();
        let engine = Engine::new(&lib.system);
        let wh_current = lib.get("Th_W_h").unwrap();
        let f_current = lib.get("F").unwrap();
        let h_current = lib.get("v_h").unwrap();
        let wh_idx = lib.system.charge_index("wh").unwrap();
        let f_idx = lib.system.charge_index("F").unwrap();
        let h_idx = lib.system.charge_index("H").unwrap();
        for spec in lib.system.generators.clone() {
            let g = generator_state(&lib.system, &spec.name).unwrap();
            for (current, idx) in [(wh_current, wh_idx), (f_current, f_idx), (h_current, h_idx)] {
                let action = engine.circle(current, &g, 0);
                let expected = g.scale(&int(spec.charges[idx]));
                assert!(
                    states_equal(&action, &expected),
                    "charge current mismatch on {}",
                    spec.name
                );
            }
        }
    }

    #[test]
    fn v_fields_form_affine_sl2_at_level_minus_three_halves() {
        let lib = FieldLibrary::build(SystemCase::AdjointS).unwrap();
        let engine = Engine::new(&lib.system);
        let v_x = lib.get("v_x").unwrap();
        let v_y = lib.get("v_y").unwrap();
        let v_h = lib.get("v_h").unwrap();
        // Central terms: k <xi, eta> under the normalized form, k = -3/2.
        assert!(states_equal(
            &engine.circle(v_x, v_y, 1),
            &State::vacuum().scale(&frac(-3, 2))
        ));
        assert!(states_equal(
            &engine.circle(v_h, v_h, 1),
            &State::vacuum().scale(&int(-3))
        ));
        assert!(engine.circle(v_x, v_x, 1).is_zero());
        // Brackets: [x, y] = h, [h, x] = 2x, [h, y] = -2y.
        assert!(states_equal(&engine.circle(v_x, v_y, 0), v_h));
        assert!(states_equal(
            &engine.circle(v_h, v_x, 0),
            &v_x.scale(&int(2))
        ));
        assert!(states_equal(
            &engine.circle(v_h, v_y, 0),
            &v_y.scale(&int(-2))
        ));
        for n in 2..=4 {
            assert!(engine.circle(v_x, v_y, n).is_zero());
        }
    }

    #[test]
    fn theta_currents_annihilate_the_v_fields() {
        let lib = FieldLibrary::build(SystemCase::AdjointS).unwrap();
        let engine = Engine::new(&lib.system);
        for theta in lib.theta_names() {
            let th = lib.get(theta).unwrap();
            for v in ["v_x", "v_y", "v_h"] {
                let field = lib.get(v).unwrap();
                for n in 0..=3 {
                    assert!(
                        engine.circle(th, field, n).is_zero(),
                        "{theta} circle_{n} {v} should vanish"
                    );
                }
            }
        }
    }

    #[test]
    fn sugawara_formula_predicts_central_charges() {
        let alg = lie::sl2();
        let trace_adj = lie::sl2_adjoint_rep().trace_form(3);
        let names = ["a", "b", "c"];
        let (_, c_e) = sugawara_formula(&alg, &trace_adj, &int(1), &names).unwrap();
        assert_eq!(c_e, int(2));
        let (_, c_s) = sugawara_formula(&alg, &trace_adj, &int(-1), &names).unwrap();
        assert_eq!(c_s, int(6));
        let (formula, c_v) =
            sugawara_formula(&alg, &lie::sl2_normalized_form(), &frac(-3, 2), &names).unwrap();
        assert_eq!(c_v, int(-9));
        assert_eq!(formula, "W(a, b) + W(b, a) + 1/2 W(c, c)");
        // k = -1/2 w.r.t. the trace form is critical.
        assert!(matches!(
            sugawara_formula(&alg, &trace_adj, &frac(-1, 2), &names),
            Err(Error::CriticalLevel { .. })
        ));
    }

    #[test]
    fn odake_library_reproduces_the_basic_table_rows() {
        let lib = FieldLibrary::build(SystemCase::OdakeOriginal).unwrap();
        let engine = Engine::new(&lib.system);
        let g = lib.get("G").unwrap();
        let gbar = lib.get("Gbar").unwrap();
        let f = lib.get("F").unwrap();
        assert!(states_equal(
            &engine.circle(g, gbar, 2),
            &State::vacuum().scale(&int(3))
        ));
        assert!(states_equal(
            &engine.circle(f, f, 1),
            &State::vacuum().scale(&int(3))
        ));
        assert!(states_equal(&engine.circle(f, g, 0), g));
        assert!(states_equal(&engine.circle(f, gbar, 0), &-gbar));
        let x = lib.get("X").unwrap();
        assert!(states_equal(&engine.circle(f, x, 0), &x.scale(&int(3))));
    }

    #[test]
    fn commutant_y_fields_match_their_quadratic_expressions() {
        let lib = FieldLibrary::build(SystemCase::AdjointW).unwrap();
        let engine = Engine::new(&lib.system);
        let y = lib.get("Y").unwrap();
        let y_alt = lib.eval(&engine, "1/2 C(Gbar, X, 0)").unwrap();
        assert!(states_equal(y, &y_alt));
        let ybar = lib.get("Ybar").unwrap();
        let ybar_alt = lib.eval(&engine, "1/2 C(G, Xbar, 0)").unwrap();
        assert!(states_equal(ybar, &ybar_alt));
    }
}
