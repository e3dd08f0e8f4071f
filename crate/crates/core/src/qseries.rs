//! Truncated exact formal series in q^(1/2), z and w for graded characters.
//!
//! Exponents of q are stored in half-steps so everything stays in integers.
//! A series carries its truncation order; products drop terms beyond it, so
//! infinite product families and lattice theta sums reduce to finitely many
//! contributing factors or lattice points.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Triple series truncated at q-half-exponent `qmax_half`. Keys are
/// (z exponent, w exponent, q half-exponent); coefficients are exact
/// integers and zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriSeries {
    qmax_half: i64,
    terms: BTreeMap<(i64, i64, i64), i64>,
}

impl TriSeries {
    pub fn zero(order: i64) -> Self {
        TriSeries {
            qmax_half: 2 * order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        let mut s = Self::zero(order);
        s.add_term(0, 0, 0, 1);
        s
    }

    /// Truncation order in whole q steps (half-steps are rounded down).
    pub fn order(&self) -> i64 {
        self.qmax_half / 2
    }

    pub fn qmax_half(&self) -> i64 {
        self.qmax_half
    }

    pub fn add_term(&mut self, z: i64, w: i64, qhalf: i64, coeff: i64) {
        if qhalf > self.qmax_half || coeff == 0 {
            return;
        }
        let slot = self.terms.entry((z, w, qhalf)).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&(z, w, qhalf));
        }
    }

    pub fn coefficient(&self, z: i64, w: i64, qhalf: i64) -> i64 {
        self.terms.get(&(z, w, qhalf)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64, i64), &i64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &TriSeries) -> TriSeries {
        let mut out = TriSeries::zero(self.order().min(other.order()));
        out.qmax_half = self.qmax_half.min(other.qmax_half);
        for (&(z, w, q), &c) in &self.terms {
            out.add_term(z, w, q, c);
        }
        for (&(z, w, q), &c) in &other.terms {
            out.add_term(z, w, q, c);
        }
        out
    }

    pub fn negate(&self) -> TriSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn sub(&self, other: &TriSeries) -> TriSeries {
        self.add(&other.negate())
    }

    pub fn mul(&self, other: &TriSeries) -> TriSeries {
        let mut out = TriSeries::zero(0);
        out.qmax_half = self.qmax_half.min(other.qmax_half);
        for (&(z1, w1, q1), &c1) in &self.terms {
            if q1 > out.qmax_half {
                continue;
            }
            for (&(z2, w2, q2), &c2) in &other.terms {
                if q1 + q2 > out.qmax_half {
                    continue;
                }
                out.add_term(z1 + z2, w1 + w2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    /// Coefficientwise equality up to the smaller truncation.
    pub fn equal_to_order(&self, other: &TriSeries) -> bool {
        let cut = self.qmax_half.min(other.qmax_half);
        let a = self.terms.iter().filter(|((_, _, q), _)| *q <= cut);
        let b = other.terms.iter().filter(|((_, _, q), _)| *q <= cut);
        a.eq(b)
    }

    /// The coefficient of w^k as a w-free series.
    pub fn w_slice(&self, k: i64) -> TriSeries {
        let mut out = TriSeries::zero(0);
        out.qmax_half = self.qmax_half;
        for (&(z, w, q), &c) in &self.terms {
            if w == k {
                out.add_term(z, 0, q, c);
            }
        }
        out
    }

    /// Sorted (z, w, q-half, coefficient) rows for serialization.
    pub fn rows(&self) -> Vec<(i64, i64, i64, i64)> {
        self.terms
            .iter()
            .map(|(&(z, w, q), &c)| (z, w, q, c))
            .collect()
    }
}

/// One factor family of an infinite product, indexed by n >= 1. Exponents
/// of q are in half-steps: the n-th Fermi factor is
/// 1 + sign * z^z_exp * w^w_exp * q^((c_half + n*d_half)/2), and the Bose
/// factor is the inverse of 1 - q^((c_half + n*d_half)/2).
#[derive(Debug, Clone, Copy)]
pub enum Factor {
    Fermi {
        sign: i64,
        z_exp: i64,
        w_exp: i64,
        c_half: i64,
        d_half: i64,
    },
    BoseInv {
        c_half: i64,
        d_half: i64,
    },
}

impl Factor {
    fn step(&self) -> (i64, i64) {
        match self {
            Factor::Fermi { c_half, d_half, .. } => (*c_half, *d_half),
            Factor::BoseInv { c_half, d_half } => (*c_half, *d_half),
        }
    }
}

/// Expands the product over n >= 1 of every factor family, truncated at
/// order N. Families must have d > 0 so that only finitely many factors
/// reach the truncation.
pub fn expand_product(factors: &[Factor], order: i64) -> Result<TriSeries> {
    let mut out = TriSeries::one(order);
    let qmax = out.qmax_half;
    for factor in factors {
        let (c, d) = factor.step();
        if d <= 0 {
            return Err(Error::NonConvergentProduct);
        }
        let min_exp = c + d;
        let degenerate = match factor {
            Factor::Fermi { .. } => min_exp < 0,
            Factor::BoseInv { .. } => min_exp < 1,
        };
        if degenerate {
            return Err(Error::NonConvergentProduct);
        }
        for n in 1.. {
            let e = c + n * d;
            if e > qmax {
                break;
            }
            let mut single = TriSeries::one(order);
            match factor {
                Factor::Fermi {
                    sign, z_exp, w_exp, ..
                } => {
                    single.add_term(*z_exp, *w_exp, e, *sign);
                }
                Factor::BoseInv { .. } => {
                    let mut k = 1;
                    while k * e <= qmax {
                        single.add_term(0, 0, k * e, 1);
                        k += 1;
                    }
                }
            }
            out = out.mul(&single);
        }
    }
    Ok(out)
}

/// A lattice sum over one or two integer variables m_i:
/// q half-exponent quad(m) + lin.m + c_half, z exponent z_lin.m + z_const,
/// w exponent likewise. The quadratic part must be positive definite.
#[derive(Debug, Clone)]
pub struct ThetaSpec {
    /// Upper-triangular coefficients of the q half-exponent quadratic:
    /// quad[i][j] multiplies m_i * m_j for i <= j.
    pub quad: Vec<Vec<i64>>,
    pub lin: Vec<i64>,
    pub c_half: i64,
    pub z_lin: Vec<i64>,
    pub z_const: i64,
    pub w_lin: Vec<i64>,
    pub w_const: i64,
}

pub fn theta_sum(spec: &ThetaSpec, order: i64) -> Result<TriSeries> {
    let vars = spec.lin.len();
    let definite = match vars {
        1 => spec.quad[0][0] > 0,
        2 => spec.quad[0][0] > 0 && 4 * spec.quad[0][0] * spec.quad[1][1] > spec.quad[0][1].pow(2),
        _ => false,
    };
    if !definite {
        return Err(Error::IndefiniteForm);
    }
    let mut out = TriSeries::zero(order);
    let qmax = out.qmax_half;
    // Safe box: an integer positive definite form has smallest eigenvalue
    // at least 1/(4 tr), so contributing points satisfy
    // |m| <= sqrt(4 tr (qmax + slack)), which the radius below dominates.
    let slack: i64 = spec.lin.iter().map(|b| b.abs()).sum::<i64>() + spec.c_half.abs();
    let spread: i64 = spec.quad.iter().flatten().map(|a| a.abs()).sum();
    let radius = (qmax + slack + 2) * (1 + 2 * spread);
    let mut point = vec![0i64; vars];
    theta_points(spec, qmax, radius, 0, &mut point, &mut out)?;
    Ok(out)
}

fn theta_points(
    spec: &ThetaSpec,
    qmax: i64,
    radius: i64,
    i: usize,
    point: &mut Vec<i64>,
    out: &mut TriSeries,
) -> Result<()> {
    if i == point.len() {
        let mut qhalf = spec.c_half;
        for (a, row) in spec.quad.iter().enumerate() {
            for (b, coeff) in row.iter().enumerate() {
                qhalf += coeff * point[a] * point[b];
            }
        }
        for (b, m) in spec.lin.iter().zip(point.iter()) {
            qhalf += b * m;
        }
        if qhalf > qmax {
            return Ok(());
        }
        if qhalf < 0 {
            return Err(Error::IndefiniteForm);
        }
        let z = spec.z_const + spec.z_lin.iter().zip(point.iter()).map(|(a, m)| a * m).sum::<i64>();
        let w = spec.w_const + spec.w_lin.iter().zip(point.iter()).map(|(a, m)| a * m).sum::<i64>();
        out.add_term(z, w, qhalf, 1);
        return Ok(());
    }
    for m in -radius..=radius {
        point[i] = m;
        theta_points(spec, qmax, radius, i + 1, point, out)?;
    }
    point[i] = 0;
    Ok(())
}

/// The three recurring factor families: a charged fermion pair
/// (1+z q^(n-1/2))(1+z^(-1) q^(n-1/2)), and the double boson 1/(1-q^n)^2.
fn fermion_pair_times_bosons() -> Vec<Factor> {
    vec![
        Factor::Fermi {
            sign: 1,
            z_exp: 1,
            w_exp: 0,
            c_half: -1,
            d_half: 2,
        },
        Factor::Fermi {
            sign: 1,
            z_exp: -1,
            w_exp: 0,
            c_half: -1,
            d_half: 2,
        },
        Factor::BoseInv {
            c_half: 0,
            d_half: 2,
        },
        Factor::BoseInv {
            c_half: 0,
            d_half: 2,
        },
    ]
}

/// Jacobi triple product to order N:
/// prod (1-q^n)(1+z q^(n-1/2))(1+z^(-1) q^(n-1/2)) = sum_m q^(m^2/2) z^m.
pub fn jacobi_check(order: i64) -> bool {
    let lhs = expand_product(
        &[
            Factor::Fermi {
                sign: -1,
                z_exp: 0,
                w_exp: 0,
                c_half: 0,
                d_half: 2,
            },
            Factor::Fermi {
                sign: 1,
                z_exp: 1,
                w_exp: 0,
                c_half: -1,
                d_half: 2,
            },
            Factor::Fermi {
                sign: 1,
                z_exp: -1,
                w_exp: 0,
                c_half: -1,
                d_half: 2,
            },
        ],
        order,
    )
    .expect("convergent by construction");
    let rhs = theta_sum(
        &ThetaSpec {
            quad: vec![vec![1]],
            lin: vec![0],
            c_half: 0,
            z_lin: vec![1],
            z_const: 0,
            w_lin: vec![0],
            w_const: 0,
        },
        order,
    )
    .expect("definite by construction");
    lhs.equal_to_order(&rhs)
}

/// Character of the rank-three charged fermion system graded by weight,
/// fermion charge z and Cartan charge w: the six-factor product form.
pub fn ch_e_product(order: i64) -> TriSeries {
    let mut factors = Vec::new();
    for (z_exp, w_exp) in [(1, 2), (-1, 2), (1, -2), (-1, -2), (1, 0), (-1, 0)] {
        factors.push(Factor::Fermi {
            sign: 1,
            z_exp,
            w_exp,
            c_half: -1,
            d_half: 2,
        });
    }
    expand_product(&factors, order).expect("convergent by construction")
}

/// The same character after one application of the Jacobi triple product:
/// fermion pair times bosons times the two-variable lattice sum
/// sum_{m,s} z^(m+s) w^(2(m-s)) q^((m^2+s^2)/2).
pub fn ch_e_sum(order: i64) -> TriSeries {
    let prefactor =
        expand_product(&fermion_pair_times_bosons(), order).expect("convergent by construction");
    let theta = theta_sum(
        &ThetaSpec {
            quad: vec![vec![1, 0], vec![0, 1]],
            lin: vec![0, 0],
            c_half: 0,
            z_lin: vec![1, 1],
            z_const: 0,
            w_lin: vec![2, -2],
            w_const: 0,
        },
        order,
    )
    .expect("definite by construction");
    prefactor.mul(&theta)
}

/// Odake's character for the invariant subalgebra: fermion pair times
/// bosons times sum_m (q^(m^2) z^(2m) - q^(m^2+m+1/2) z^(2m+1)).
pub fn ch_o(order: i64) -> TriSeries {
    let prefactor =
        expand_product(&fermion_pair_times_bosons(), order).expect("convergent by construction");
    let even = theta_sum(
        &ThetaSpec {
            quad: vec![vec![2]],
            lin: vec![0],
            c_half: 0,
            z_lin: vec![2],
            z_const: 0,
            w_lin: vec![0],
            w_const: 0,
        },
        order,
    )
    .expect("definite by construction");
    let odd = theta_sum(
        &ThetaSpec {
            quad: vec![vec![2]],
            lin: vec![2],
            c_half: 1,
            z_lin: vec![2],
            z_const: 1,
            w_lin: vec![0],
            w_const: 0,
        },
        order,
    )
    .expect("definite by construction");
    prefactor.mul(&even.sub(&odd))
}

/// Multiplicity series of the trivial isotypic part: the difference of the
/// w^0 and w^2 coefficients. Valid because every w exponent in the graded
/// character is even.
pub fn invariant_extract(s: &TriSeries) -> TriSeries {
    s.w_slice(0).sub(&s.w_slice(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(order: i64, entries: &[(i64, i64, i64, i64)]) -> TriSeries {
        let mut s = TriSeries::zero(order);
        for &(z, w, q, c) in entries {
            s.add_term(z, w, q, c);
        }
        s
    }

    #[test]
    fn product_of_two_linear_factors() {
        let a = linear(2, &[(0, 0, 0, 1), (1, 0, 1, 1)]);
        let b = linear(2, &[(0, 0, 0, 1), (-1, 0, 1, 1)]);
        let ab = a.mul(&b);
        let expected = linear(2, &[(0, 0, 0, 1), (1, 0, 1, 1), (-1, 0, 1, 1), (0, 0, 2, 1)]);
        assert!(ab.equal_to_order(&expected));
        assert!(ab.mul(&TriSeries::one(2)).equal_to_order(&ab));
    }

    #[test]
    fn double_boson_counts_partition_pairs() {
        // Convolution oracle: pairs of partitions of total size n.
        let p = [1i64, 1, 2, 3];
        let pairs: Vec<i64> = (0..4)
            .map(|n| (0..=n).map(|k| p[k] * p[n - k]).sum())
            .collect();
        assert_eq!(pairs, vec![1, 2, 5, 10]);
        let s = expand_product(
            &[
                Factor::BoseInv {
                    c_half: 0,
                    d_half: 2,
                },
                Factor::BoseInv {
                    c_half: 0,
                    d_half: 2,
                },
            ],
            3,
        )
        .unwrap();
        for n in 0..4 {
            assert_eq!(s.coefficient(0, 0, 2 * n), pairs[n as usize]);
        }
    }

    #[test]
    fn six_factor_product_at_half_order() {
        let s = ch_e_product(1);
        assert_eq!(s.coefficient(0, 0, 0), 1);
        for z in [1, -1] {
            for w in [0, 2, -2] {
                assert_eq!(s.coefficient(z, w, 1), 1, "z {z} w {w}");
            }
        }
    }

    #[test]
    fn divergent_families_are_rejected() {
        let bad = expand_product(
            &[Factor::BoseInv {
                c_half: 2,
                d_half: 0,
            }],
            2,
        );
        assert!(matches!(bad, Err(Error::NonConvergentProduct)));
    }

    #[test]
    fn theta_sums_match_hand_expansions() {
        let even = theta_sum(
            &ThetaSpec {
                quad: vec![vec![2]],
                lin: vec![0],
                c_half: 0,
                z_lin: vec![2],
                z_const: 0,
                w_lin: vec![0],
                w_const: 0,
            },
            1,
        )
        .unwrap();
        assert!(even.equal_to_order(&linear(1, &[(0, 0, 0, 1), (2, 0, 2, 1), (-2, 0, 2, 1)])));

        let indefinite = theta_sum(
            &ThetaSpec {
                quad: vec![vec![1, 0], vec![0, -1]],
                lin: vec![0, 0],
                c_half: 0,
                z_lin: vec![1, 1],
                z_const: 0,
                w_lin: vec![0, 0],
                w_const: 0,
            },
            1,
        );
        assert!(matches!(indefinite, Err(Error::IndefiniteForm)));

        let double = theta_sum(
            &ThetaSpec {
                quad: vec![vec![1, 0], vec![0, 1]],
                lin: vec![0, 0],
                c_half: 0,
                z_lin: vec![1, 1],
                z_const: 0,
                w_lin: vec![2, -2],
                w_const: 0,
            },
            1,
        )
        .unwrap();
        assert_eq!(double.coefficient(0, 0, 0), 1);
        for (z, w) in [(1, 2), (1, -2), (-1, 2), (-1, -2)] {
            assert_eq!(double.coefficient(z, w, 1), 1, "z {z} w {w}");
        }
        let low: Vec<_> = double.terms().filter(|((_, _, q), _)| *q <= 1).collect();
        assert_eq!(low.len(), 5);
    }

    #[test]
    fn jacobi_triple_product_holds_and_detects_mutations() {
        assert!(jacobi_check(0));
        assert!(jacobi_check(3));
        let lhs = expand_product(
            &[
                Factor::Fermi {
                    sign: -1,
                    z_exp: 0,
                    w_exp: 0,
                    c_half: 0,
                    d_half: 2,
                },
                Factor::Fermi {
                    sign: 1,
                    z_exp: 1,
                    w_exp: 0,
                    c_half: -1,
                    d_half: 2,
                },
                Factor::Fermi {
                    sign: 1,
                    z_exp: -1,
                    w_exp: 0,
                    c_half: -1,
                    d_half: 2,
                },
            ],
            3,
        )
        .unwrap();
        let mut mutated = theta_sum(
            &ThetaSpec {
                quad: vec![vec![1]],
                lin: vec![0],
                c_half: 0,
                z_lin: vec![1],
                z_const: 0,
                w_lin: vec![0],
                w_const: 0,
            },
            3,
        )
        .unwrap();
        mutated.add_term(1, 0, 1, -2);
        assert!(!lhs.equal_to_order(&mutated));
    }

    #[test]
    fn character_product_and_sum_forms_agree() {
        for order in [1, 2, 3] {
            assert!(
                ch_e_product(order).equal_to_order(&ch_e_sum(order)),
                "order {order}"
            );
        }
    }

    #[test]
    fn invariant_extraction_reproduces_the_odake_character() {
        for order in [2, 3] {
            let inv = invariant_extract(&ch_e_product(order));
            assert!(inv.equal_to_order(&ch_o(order)), "order {order}");
        }
        let ch = ch_o(3);
        assert_eq!(ch.coefficient(0, 0, 0), 1);
        assert_eq!(ch.coefficient(1, 0, 1), 0);
        assert_eq!(ch.coefficient(-1, 0, 1), 0);
        assert_eq!(ch.coefficient(0, 0, 2), 1);
        for (_, &c) in ch.terms() {
            assert!(c >= 0);
        }
    }
}
