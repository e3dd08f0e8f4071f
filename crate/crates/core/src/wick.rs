//! Mode actions, circle products, OPEs, Wick products, derivatives.
//!
//! Everything reduces to two recursions: a generator mode moving through a
//! normal monomial via the super-bracket, and the iterate formula expanding
//! a composite field's mode into generator modes. Both are exact over the
//! rationals.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::scalar::{self};
use crate::state::{normalize_monomial, Mode, NormalMonomial, Normalized, State};
use crate::system::FreeFieldSystem;

/// Singular part of a(z)b(w): nonzero circle products a∘ₙb for n >= 0,
/// keyed by n (the pole (z-w)^{-n-1}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpeResult {
    pub left: String,
    pub right: String,
    pub poles: BTreeMap<i64, State>,
}

impl OpeResult {
    pub fn is_regular(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn pole(&self, n: i64) -> State {
        self.poles.get(&n).cloned().unwrap_or_else(State::zero)
    }

    pub fn display(&self, sys: &FreeFieldSystem) -> String {
        if self.poles.is_empty() {
            return format!("{}(z) {}(w) ~ 0", self.left, self.right);
        }
        let mut parts = Vec::new();
        for (n, state) in self.poles.iter().rev() {
            parts.push(format!("[{}] (z-w)^{}", state.display(sys), -n - 1));
        }
        format!("{}(z) {}(w) ~ {}", self.left, self.right, parts.join(" + "))
    }
}

/// Calculator for one free-field system. Memoizes the monomial-level
/// iterate recursion; the cache only ever stores already-final values, so
/// sharing one engine across a suite is safe and recommended.
pub struct Engine<'a> {
    sys: &'a FreeFieldSystem,
    memo: RefCell<HashMap<(NormalMonomial, i64, NormalMonomial), State>>,
}

impl<'a> Engine<'a> {
    pub fn new(sys: &'a FreeFieldSystem) -> Self {
        Engine {
            sys,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &FreeFieldSystem {
        self.sys
    }

    /// Mode g(n) acting on a state, by generator name.
    pub fn gen_mode_apply(&self, g: &str, n: i64, v: &State) -> Result<State> {
        let gen = self.sys.gen_index(g)?;
        Ok(self.gen_mode(gen, n, v))
    }

    pub(crate) fn gen_mode(&self, gen: usize, n: i64, v: &State) -> State {
        if n <= -1 {
            self.creation_mode(gen, n, v)
        } else {
            let mut out = State::zero();
            for (mono, c) in v.terms() {
                out.add_scaled(c, &self.annihilation_mode(gen, n, mono));
            }
            out
        }
    }

    fn creation_mode(&self, gen: usize, n: i64, v: &State) -> State {
        debug_assert!(n <= -1);
        let mut out = State::zero();
        for (mono, c) in v.terms() {
            let mut modes = Vec::with_capacity(mono.len() + 1);
            modes.push(Mode::new(gen, n));
            modes.extend_from_slice(mono.modes());
            match normalize_monomial(self.sys, &modes).expect("creation modes only") {
                Normalized::Zero => {}
                Normalized::Ordered(sign, m) => {
                    out.add_term(c.clone() * scalar::int(sign as i64), m);
                }
            }
        }
        out
    }

    /// g(n) with n >= 0 on a single monomial: move left to right, each
    /// passed mode h(p) contributes the bracket binom(n,k) c_k(g,h) with
    /// k = n + p + 1, and the vacuum annihilates the remainder.
    fn annihilation_mode(&self, gen: usize, n: i64, mono: &NormalMonomial) -> State {
        debug_assert!(n >= 0);
        let g_odd = self.sys.parity(gen).is_odd();
        let modes = mono.modes();
        let mut out = State::zero();
        let mut sign = 1i64;
        for (i, h) in modes.iter().enumerate() {
            let k = n + h.n + 1;
            if k >= 0 {
                let c = self.sys.contraction(gen, h.gen, k);
                if !scalar::is_zero(&c) {
                    let coeff = scalar::binomial(n, k as u32) * c * scalar::int(sign);
                    let rest: Vec<Mode> =
                        modes[..i].iter().chain(&modes[i + 1..]).copied().collect();
                    out.add_term(coeff, NormalMonomial::from_sorted(rest));
                }
            }
            if g_odd && self.sys.parity(h.gen).is_odd() {
                sign = -sign;
            }
        }
        out
    }

    /// The state a_{(n)} v for composite a, bilinear in both arguments.
    pub fn field_mode_apply(&self, a: &State, n: i64, v: &State) -> State {
        let mut out = State::zero();
        for (ma, ca) in a.terms() {
            for (mv, cv) in v.terms() {
                let r = self.mono_fma(ma, n, mv);
                if !r.is_zero() {
                    out.add_scaled(&(ca.clone() * cv), &r);
                }
            }
        }
        out
    }

    /// n-th circle product a∘ₙb for any integer n.
    pub fn circle(&self, a: &State, b: &State, n: i64) -> State {
        self.field_mode_apply(a, n, b)
    }

    /// Wick product :ab: = a∘₋₁b.
    pub fn wick(&self, a: &State, b: &State) -> State {
        self.circle(a, b, -1)
    }

    /// Right-nested iterated Wick product :a₁(:a₂(…):):.
    pub fn wick_many(&self, factors: &[State]) -> State {
        match factors.split_last() {
            None => State::vacuum(),
            Some((last, rest)) => rest
                .iter()
                .rev()
                .fold(last.clone(), |acc, f| self.wick(f, &acc)),
        }
    }

    /// Translation operator: g(-m)·rest maps to m·g(-m-1)·rest plus
    /// g(-m)·∂rest, term by term. Agrees with a∘₋₂|0⟩.
    pub fn derivative(&self, a: &State) -> State {
        let mut out = State::zero();
        for (mono, c) in a.terms() {
            for i in 0..mono.len() {
                let mut modes = mono.modes().to_vec();
                let m = -modes[i].n;
                modes[i].n -= 1;
                match normalize_monomial(self.sys, &modes).expect("creation modes only") {
                    Normalized::Zero => {}
                    Normalized::Ordered(sign, mm) => {
                        out.add_term(c.clone() * scalar::int(m * sign as i64), mm);
                    }
                }
            }
        }
        out
    }

    /// (1/j!) ∂^j a.
    pub fn derivative_pow_over_factorial(&self, a: &State, j: u32) -> State {
        let mut out = a.clone();
        for _ in 0..j {
            out = self.derivative(&out);
        }
        out.scale(&scalar::inv_factorial(j))
    }

    /// All nonzero singular circle products, with the locality bound
    /// verified by direct evaluation at the bound and one step past it.
    pub fn ope_named(&self, left: &str, a: &State, right: &str, b: &State) -> Result<OpeResult> {
        let bound = self.pole_bound(a, b);
        let mut poles = BTreeMap::new();
        for n in 0..bound {
            let s = self.circle(a, b, n);
            if !s.is_zero() {
                poles.insert(n, s);
            }
        }
        for n in [bound, bound + 1] {
            if !self.circle(a, b, n).is_zero() {
                return Err(Error::LocalityViolation {
                    left: left.to_string(),
                    right: right.to_string(),
                    pole: n,
                    bound,
                });
            }
        }
        Ok(OpeResult {
            left: left.to_string(),
            right: right.to_string(),
            poles,
        })
    }

    pub fn ope(&self, a: &State, b: &State) -> Result<OpeResult> {
        self.ope_named("a", a, "b", b)
    }

    /// a∘ₙb vanishes for n >= this. Depth sum, plus per-factor slack when
    /// the contraction table has orders above 1.
    pub fn pole_bound(&self, a: &State, b: &State) -> i64 {
        a.depth() + b.depth() + a.max_len() as i64 * self.order_slack()
    }

    fn mono_bound(&self, a: &NormalMonomial, v: &NormalMonomial) -> i64 {
        a.depth() + v.depth() + a.len() as i64 * self.order_slack()
    }

    fn order_slack(&self) -> i64 {
        (self.sys.max_contraction_order() - 1).max(0)
    }

    /// Iterate recursion on monomials. For a = g(-m)·u:
    ///   (g(-m)u)_(n) v = Σ_j binom(m+j-1, j) [ g(-m-j)(u_(n+j) v)
    ///                    - (-1)^(m+|g||u|) u_(n-m-j)(g(j) v) ].
    /// Both sums are finite: the first by the vanishing bound on u, the
    /// second because g(j)v needs a contraction of order n+p+1 <= max.
    fn mono_fma(&self, a: &NormalMonomial, n: i64, v: &NormalMonomial) -> State {
        if a.is_vacuum() {
            return if n == -1 {
                State::from_term(scalar::int(1), v.clone())
            } else {
                State::zero()
            };
        }
        let key = (a.clone(), n, v.clone());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }

        let head = a.modes()[0];
        let m = -head.n;
        let u = NormalMonomial::from_sorted(a.modes()[1..].to_vec());
        let gu_odd = self.sys.parity(head.gen).is_odd() && u.parity(self.sys).is_odd();
        let term2_sign = if (m % 2 == 0) != gu_odd { -1 } else { 1 };

        let mut out = State::zero();

        let u_bound = self.mono_bound(&u, v);
        let mut j = 0i64;
        while n + j < u_bound {
            let inner = self.mono_fma(&u, n + j, v);
            if !inner.is_zero() {
                let lifted = self.creation_mode(head.gen, head.n - j, &inner);
                out.add_scaled(&scalar::binomial(m + j - 1, j as u32), &lifted);
            }
            j += 1;
        }

        let j_max = self.sys.max_contraction_order() - 1 + v.depth();
        let v_state = State::from_term(scalar::int(1), v.clone());
        for j in 0..=j_max.max(-1) {
            let gv = self.gen_mode(head.gen, j, &v_state);
            if gv.is_zero() {
                continue;
            }
            let coeff = scalar::binomial(m + j - 1, j as u32) * scalar::int(term2_sign);
            for (mv, cv) in gv.terms() {
                let inner = self.mono_fma(&u, n - m - j, mv);
                if !inner.is_zero() {
                    out.add_scaled(&(coeff.clone() * cv), &inner);
                }
            }
        }

        self.memo.borrow_mut().insert(key, out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_system, SystemCase};
    use crate::scalar::{frac, int};
    use crate::state::{generator_state, states_equal};

    fn heis() -> FreeFieldSystem {
        build_system(SystemCase::Heisenberg).unwrap()
    }

    fn adjoint_e() -> FreeFieldSystem {
        build_system(SystemCase::AdjointE).unwrap()
    }

    fn adjoint_s() -> FreeFieldSystem {
        build_system(SystemCase::AdjointS).unwrap()
    }

    #[test]
    fn beta_zero_mode_contracts_against_gamma() {
        let sys = adjoint_s();
        let engine = Engine::new(&sys);
        let gamma = generator_state(&sys, "gamma_xp").unwrap();
        let out = engine.gen_mode_apply("beta_x", 0, &gamma).unwrap();
        assert!(states_equal(&out, &State::vacuum()));
    }

    #[test]
    fn heisenberg_first_mode_on_ground_state() {
        let sys = heis();
        let engine = Engine::new(&sys);
        let j = generator_state(&sys, "j").unwrap();
        let out = engine.gen_mode_apply("j", 1, &j).unwrap();
        assert!(states_equal(&out, &State::vacuum()));
        assert!(engine.gen_mode_apply("j", 0, &j).unwrap().is_zero());
        assert!(engine.gen_mode_apply("j", 2, &j).unwrap().is_zero());
    }

    #[test]
    fn odd_square_is_zero() {
        let sys = adjoint_e();
        let engine = Engine::new(&sys);
        let b = generator_state(&sys, "b_x").unwrap();
        assert!(engine.gen_mode_apply("b_x", -1, &b).unwrap().is_zero());
    }

    #[test]
    fn vacuum_is_the_unit_field() {
        let sys = heis();
        let engine = Engine::new(&sys);
        let j = generator_state(&sys, "j").unwrap();
        let vac = State::vacuum();
        assert!(states_equal(&engine.field_mode_apply(&vac, -1, &j), &j));
        assert!(engine.field_mode_apply(&vac, 0, &j).is_zero());
        assert!(engine.field_mode_apply(&vac, -3, &j).is_zero());
        // a∘ₙ|0⟩ = δ_{n,-1}a on the stated range n >= -1.
        assert!(states_equal(&engine.circle(&j, &vac, -1), &j));
        assert!(engine.circle(&j, &vac, 0).is_zero());
        assert!(engine.circle(&j, &vac, 3).is_zero());
    }

    #[test]
    fn bc_zeroth_product_is_the_pairing() {
        let sys = adjoint_e();
        let engine = Engine::new(&sys);
        let b = generator_state(&sys, "b_x").unwrap();
        let c = generator_state(&sys, "c_xp").unwrap();
        assert!(states_equal(&engine.circle(&b, &c, 0), &State::vacuum()));
        let ope = engine.ope(&b, &c).unwrap();
        assert_eq!(ope.poles.len(), 1);
        assert!(states_equal(&ope.pole(0), &State::vacuum()));
    }

    #[test]
    fn like_fermions_are_mutually_regular() {
        let sys = adjoint_e();
        let engine = Engine::new(&sys);
        let bx = generator_state(&sys, "b_x").unwrap();
        let by = generator_state(&sys, "b_y").unwrap();
        assert!(engine.ope(&bx, &by).unwrap().is_regular());
    }

    #[test]
    fn wick_of_bc_pair_anticommutes() {
        let sys = adjoint_e();
        let engine = Engine::new(&sys);
        let b = generator_state(&sys, "b_x").unwrap();
        let c = generator_state(&sys, "c_xp").unwrap();
        let bc = engine.wick(&b, &c);
        let cb = engine.wick(&c, &b);
        assert!((&bc + &cb).is_zero());
        // :b c: is the normally ordered monomial itself.
        let bi = sys.gen_index("b_x").unwrap();
        let ci = sys.gen_index("c_xp").unwrap();
        let expect = State::from_term(
            int(1),
            NormalMonomial::from_sorted(vec![Mode::new(bi, -1), Mode::new(ci, -1)]),
        );
        assert!(states_equal(&bc, &expect));
    }

    #[test]
    fn heisenberg_singular_part() {
        let sys = heis();
        let engine = Engine::new(&sys);
        let j = generator_state(&sys, "j").unwrap();
        let ope = engine.ope(&j, &j).unwrap();
        assert!(states_equal(&ope.pole(1), &State::vacuum()));
        assert!(ope.pole(0).is_zero());
        assert_eq!(ope.poles.len(), 1);
    }

    #[test]
    fn derivative_matches_translation_axiom() {
        let sys = heis();
        let engine = Engine::new(&sys);
        assert!(engine.derivative(&State::vacuum()).is_zero());
        let j = generator_state(&sys, "j").unwrap();
        let dj = engine.derivative(&j);
        let ji = sys.gen_index("j").unwrap();
        let expect = State::from_term(int(1), NormalMonomial::from_sorted(vec![Mode::new(ji, -2)]));
        assert!(states_equal(&dj, &expect));
    }

    #[test]
    fn derivative_agrees_with_minus_two_product_on_vacuum() {
        let sys = adjoint_e();
        let engine = Engine::new(&sys);
        let b = generator_state(&sys, "b_x").unwrap();
        let c = generator_state(&sys, "c_xp").unwrap();
        let w = engine.wick(&b, &engine.derivative(&c));
        for a in [&b, &c, &w] {
            let lhs = engine.derivative(a);
            let rhs = engine.circle(a, &State::vacuum(), -2);
            assert!(states_equal(&lhs, &rhs));
        }
    }

    #[test]
    fn virasoro_from_one_boson() {
        // L = ½:jj: has L∘₃L = ½|0⟩ (c = 1) and L∘₁L = 2L.
        let sys = heis();
        let engine = Engine::new(&sys);
        let j = generator_state(&sys, "j").unwrap();
        let l = engine.wick(&j, &j).scale(&frac(1, 2));
        assert!(states_equal(
            &engine.circle(&l, &l, 3),
            &State::vacuum().scale(&frac(1, 2))
        ));
        assert!(states_equal(&engine.circle(&l, &l, 1), &l.scale(&int(2))));
        assert!(engine.circle(&l, &l, 2).is_zero());
        assert!(states_equal(
            &engine.circle(&l, &l, 0),
            &engine.derivative(&l)
        ));
        // j is primary of weight 1 for L.
        assert!(states_equal(&engine.circle(&l, &j, 1), &j));
        assert!(states_equal(
            &engine.circle(&l, &j, 0),
            &engine.derivative(&j)
        ));
        assert!(engine.circle(&l, &j, 2).is_zero());
    }

    #[test]
    fn wick_many_nests_right_to_left() {
        let sys = heis();
        let engine = Engine::new(&sys);
        let j = generator_state(&sys, "j").unwrap();
        let jj = engine.wick(&j, &j);
        let nested = engine.wick(&j, &jj);
        assert!(states_equal(
            &engine.wick_many(&[j.clone(), j.clone(), j.clone()]),
            &nested
        ));
        assert!(states_equal(&engine.wick_many(&[]), &State::vacuum()));
        assert!(states_equal(&engine.wick_many(&[j.clone()]), &j));
    }
}
