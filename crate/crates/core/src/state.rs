//! Fock states: normally ordered creation monomials over a vacuum.
//!
//! A mode `g(n)` with `n <= -1` is a creation operator; a normal monomial
//! is a product of creation modes applied to the vacuum `|0>`, kept in a
//! canonical order: by generator declaration index, then by mode index
//! ascending (deeper modes first), so `j(-3) j(-1) |0>` is canonical.
//! Reordering across odd modes flips the sign; a repeated odd mode kills
//! the monomial. A state is a finite rational combination of normal
//! monomials.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::system::{FreeFieldSystem, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub gen: usize,
    pub n: i64,
}

impl Mode {
    pub fn new(gen: usize, n: i64) -> Self {
        Mode { gen, n }
    }
}

/// Canonically ordered creation monomial. The empty monomial is the vacuum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NormalMonomial(Vec<Mode>);

/// Outcome of normal ordering a raw mode list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    /// A repeated odd mode appeared.
    Zero,
    /// Sign from reordering odd modes, then the canonical monomial.
    Ordered(i32, NormalMonomial),
}

/// Sorts creation modes into canonical order, tracking the sign produced
/// by transposing odd modes. Rejects any mode with index >= 0.
pub fn normalize_monomial(sys: &FreeFieldSystem, modes: &[Mode]) -> Result<Normalized> {
    for m in modes {
        if m.n >= 0 {
            return Err(Error::AnnihilationMode {
                gen: sys.gen_name(m.gen).to_string(),
                mode: m.n,
            });
        }
    }
    let mut v: Vec<Mode> = modes.to_vec();
    let mut sign = 1i32;
    // Insertion sort; monomials are short and we need exact transposition
    // signs, not asymptotics.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j] < v[j - 1] {
            if sys.parity(v[j].gen).is_odd() && sys.parity(v[j - 1].gen).is_odd() {
                sign = -sign;
            }
            v.swap(j, j - 1);
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] && sys.parity(w[0].gen).is_odd() {
            return Ok(Normalized::Zero);
        }
    }
    Ok(Normalized::Ordered(sign, NormalMonomial(v)))
}

impl NormalMonomial {
    pub fn vacuum() -> Self {
        NormalMonomial(Vec::new())
    }

    /// Private to this module: callers go through `normalize_monomial`.
    pub(crate) fn from_sorted(modes: Vec<Mode>) -> Self {
        NormalMonomial(modes)
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of |mode index| over the monomial.
    pub fn depth(&self) -> i64 {
        self.0.iter().map(|m| -m.n).sum()
    }

    pub fn parity(&self, sys: &FreeFieldSystem) -> Parity {
        let odd = self.0.iter().filter(|m| sys.parity(m.gen).is_odd()).count();
        if odd % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn display(&self, sys: &FreeFieldSystem) -> String {
        if self.0.is_empty() {
            return "|0>".to_string();
        }
        let mut out = String::new();
        for m in &self.0 {
            out.push_str(&format!("{}({}) ", sys.gen_name(m.gen), m.n));
        }
        out.push_str("|0>");
        out
    }
}

/// Finite rational combination of normal monomials. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct State {
    terms: BTreeMap<NormalMonomial, Scalar>,
}

impl State {
    pub fn zero() -> Self {
        State::default()
    }

    pub fn vacuum() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(NormalMonomial::vacuum(), scalar::int(1));
        State { terms }
    }

    pub fn from_term(coeff: Scalar, mono: NormalMonomial) -> Self {
        let mut s = State::zero();
        s.add_term(coeff, mono);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &NormalMonomial) -> Scalar {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| scalar::int(0))
    }

    /// Coefficient of the vacuum monomial.
    pub fn vacuum_coefficient(&self) -> Scalar {
        self.coefficient(&NormalMonomial::vacuum())
    }

    pub fn add_term(&mut self, coeff: Scalar, mono: NormalMonomial) {
        if scalar::is_zero(&coeff) {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if scalar::is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &State) {
        for (m, c) in &other.terms {
            self.add_term(c.clone(), m.clone());
        }
    }

    pub fn add_scaled(&mut self, factor: &Scalar, other: &State) {
        if scalar::is_zero(factor) {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(factor.clone() * c, m.clone());
        }
    }

    pub fn scale(&self, factor: &Scalar) -> State {
        if scalar::is_zero(factor) {
            return State::zero();
        }
        State {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), factor.clone() * c))
                .collect(),
        }
    }

    /// Max depth over monomials (0 for the zero state and the vacuum).
    pub fn depth(&self) -> i64 {
        self.terms.keys().map(|m| m.depth()).max().unwrap_or(0)
    }

    /// Max monomial length over terms.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Parity when homogeneous, `None` for mixed-parity or zero states.
    pub fn parity(&self, sys: &FreeFieldSystem) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(sys));
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Deterministic text form: terms in monomial order,
    /// `c * g1(n1) g2(n2) |0>` joined with signs.
    pub fn display(&self, sys: &FreeFieldSystem) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            let neg = scalar::signum(coeff) < 0;
            let abs = if neg { -coeff.clone() } else { coeff.clone() };
            if i == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&format!("{} * {}", scalar::render(&abs), mono.display(sys)));
        }
        out
    }
}

impl Add<&State> for &State {
    type Output = State;
    fn add(self, rhs: &State) -> State {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&State> for &State {
    type Output = State;
    fn sub(self, rhs: &State) -> State {
        let mut out = self.clone();
        out.add_scaled(&scalar::int(-1), rhs);
        out
    }
}

impl Neg for &State {
    type Output = State;
    fn neg(self) -> State {
        self.scale(&scalar::int(-1))
    }
}

impl Mul<&State> for &Scalar {
    type Output = State;
    fn mul(self, rhs: &State) -> State {
        rhs.scale(self)
    }
}

/// Exact equality of states (termwise).
pub fn states_equal(a: &State, b: &State) -> bool {
    a == b
}

/// The state `g(-1)|0>` of a generator.
pub fn generator_state(sys: &FreeFieldSystem, name: &str) -> Result<State> {
    let gen = sys.gen_index(name)?;
    Ok(State::from_term(
        scalar::int(1),
        NormalMonomial::from_sorted(vec![Mode::new(gen, -1)]),
    ))
}

/// Per-generator weights used for grading. The algebra never depends on
/// these; slices and characters do.
#[derive(Debug, Clone)]
pub struct WeightAssignment {
    pub weights: Vec<Scalar>,
}

impl WeightAssignment {
    pub fn default_for(sys: &FreeFieldSystem) -> Self {
        WeightAssignment {
            weights: sys.generators.iter().map(|g| g.weight.clone()).collect(),
        }
    }

    pub fn with_override(sys: &FreeFieldSystem, pairs: &[(&str, Scalar)]) -> Result<Self> {
        let mut w = Self::default_for(sys);
        for (name, value) in pairs {
            let i = sys.gen_index(name)?;
            w.weights[i] = value.clone();
        }
        Ok(w)
    }

    /// Weight of the mode `g(n)`: wt(g) - n - 1.
    pub fn mode_weight(&self, mode: &Mode) -> Scalar {
        self.weights[mode.gen].clone() - scalar::int(mode.n) - scalar::int(1)
    }
}

/// Weight plus one integer per declared charge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeVector {
    pub weight: Scalar,
    pub charges: Vec<i64>,
}

impl GradeVector {
    pub fn display(&self, sys: &FreeFieldSystem) -> String {
        let mut out = format!("wt {}", scalar::render(&self.weight));
        for (name, v) in sys.charge_names.iter().zip(&self.charges) {
            out.push_str(&format!(", {name} {v}"));
        }
        out
    }
}

pub fn monomial_grade(
    sys: &FreeFieldSystem,
    weights: &WeightAssignment,
    mono: &NormalMonomial,
) -> GradeVector {
    let mut weight = scalar::int(0);
    let mut charges = vec![0i64; sys.charge_names.len()];
    for m in mono.modes() {
        weight += weights.mode_weight(m);
        for (c, v) in charges.iter_mut().zip(&sys.generators[m.gen].charges) {
            *c += v;
        }
    }
    GradeVector { weight, charges }
}

/// Grade of a homogeneous state; errors on the zero state and on mixed
/// grades.
pub fn grade_of(
    sys: &FreeFieldSystem,
    weights: &WeightAssignment,
    state: &State,
) -> Result<GradeVector> {
    let mut grade: Option<GradeVector> = None;
    for (mono, _) in state.terms() {
        let g = monomial_grade(sys, weights, mono);
        match &grade {
            None => grade = Some(g),
            Some(first) => {
                if *first != g {
                    return Err(Error::Inhomogeneous {
                        first: first.display(sys),
                        second: g.display(sys),
                    });
                }
            }
        }
    }
    grade.ok_or(Error::ZeroStateGrade)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_system, SystemCase};
    use crate::scalar::{frac, int};

    #[test]
    fn normalize_sorts_even_modes_with_plus_sign() {
        let sys = build_system(SystemCase::Heisenberg).unwrap();
        let j = sys.gen_index("j").unwrap();
        let out = normalize_monomial(&sys, &[Mode::new(j, -1), Mode::new(j, -3)]).unwrap();
        match out {
            Normalized::Ordered(sign, mono) => {
                assert_eq!(sign, 1);
                assert_eq!(mono.modes(), &[Mode::new(j, -3), Mode::new(j, -1)]);
            }
            Normalized::Zero => panic!("unexpected zero"),
        }
    }

    #[test]
    fn normalize_swaps_odd_modes_with_minus_sign() {
        let sys = build_system(SystemCase::AdjointE).unwrap();
        let bx = sys.gen_index("b_x").unwrap();
        let cx = sys.gen_index("c_xp").unwrap();
        // c then b: one odd transposition.
        let out = normalize_monomial(&sys, &[Mode::new(cx, -1), Mode::new(bx, -1)]).unwrap();
        match out {
            Normalized::Ordered(sign, mono) => {
                assert_eq!(sign, -1);
                assert_eq!(mono.modes(), &[Mode::new(bx, -1), Mode::new(cx, -1)]);
            }
            Normalized::Zero => panic!("unexpected zero"),
        }
    }

    #[test]
    fn repeated_odd_mode_is_zero() {
        let sys = build_system(SystemCase::AdjointE).unwrap();
        let bx = sys.gen_index("b_x").unwrap();
        let out = normalize_monomial(&sys, &[Mode::new(bx, -1), Mode::new(bx, -1)]).unwrap();
        assert_eq!(out, Normalized::Zero);
    }

    #[test]
    fn repeated_even_mode_is_fine() {
        let sys = build_system(SystemCase::Heisenberg).unwrap();
        let j = sys.gen_index("j").unwrap();
        let out = normalize_monomial(&sys, &[Mode::new(j, -1), Mode::new(j, -1)]).unwrap();
        assert!(matches!(out, Normalized::Ordered(1, _)));
    }

    #[test]
    fn annihilation_modes_rejected() {
        let sys = build_system(SystemCase::Heisenberg).unwrap();
        let j = sys.gen_index("j").unwrap();
        assert!(normalize_monomial(&sys, &[Mode::new(j, 0)]).is_err());
    }

    #[test]
    fn grade_of_generator_states() {
        let sys = build_system(SystemCase::AdjointE).unwrap();
        let w = WeightAssignment::default_for(&sys);
        // b_x(-1)|0> at b-weight 1/2: weight 1/2, F -1, wh +2.
        let b = generator_state(&sys, "b_x").unwrap();
        let g = grade_of(&sys, &w, &b).unwrap();
        assert_eq!(g.weight, frac(1, 2));
        let f = sys.charge_index("F").unwrap();
        let wh = sys.charge_index("wh").unwrap();
        assert_eq!(g.charges[f], -1);
        assert_eq!(g.charges[wh], 2);
    }

    #[test]
    fn zero_and_mixed_states_have_no_grade() {
        let sys = build_system(SystemCase::AdjointE).unwrap();
        let w = WeightAssignment::default_for(&sys);
        assert!(matches!(
            grade_of(&sys, &w, &State::zero()),
            Err(Error::ZeroStateGrade)
        ));
        let mixed =
            &generator_state(&sys, "b_x").unwrap() + &generator_state(&sys, "c_xp").unwrap();
        assert!(matches!(
            grade_of(&sys, &w, &mixed),
            Err(Error::Inhomogeneous { .. })
        ));
    }

    #[test]
    fn display_orders_terms_deterministically() {
        let sys = build_system(SystemCase::Heisenberg).unwrap();
        let j = sys.gen_index("j").unwrap();
        let m1 = NormalMonomial::from_sorted(vec![Mode::new(j, -2)]);
        let m2 = NormalMonomial::from_sorted(vec![Mode::new(j, -1), Mode::new(j, -1)]);
        let mut s = State::zero();
        s.add_term(int(-2), m2);
        s.add_term(frac(1, 3), m1);
        assert_eq!(s.display(&sys), "1/3 * j(-2) |0> - 2 * j(-1) j(-1) |0>");
    }
}
