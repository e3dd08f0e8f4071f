//! Finite-dimensional Lie superalgebra data: bases, brackets, bilinear
//! forms, representations. Everything is validated on construction
//! (antisymmetry, super-Jacobi, invariance), so the tables below cannot
//! drift silently.

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::system::Parity;

pub type Matrix = Vec<Vec<Scalar>>;

fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![scalar::int(0); cols]; rows]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            let mut s = scalar::int(0);
            for t in 0..k {
                s += a[i][t].clone() * &b[t][j];
            }
            out[i][j] = s;
        }
    }
    out
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.clone() - y).collect())
        .collect()
}

fn mat_trace(a: &Matrix) -> Scalar {
    let mut s = scalar::int(0);
    for (i, row) in a.iter().enumerate() {
        s += row[i].clone();
    }
    s
}

/// Inverse by Gauss-Jordan; `None` when singular.
pub fn mat_inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut work: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    scalar::int(1)
                } else {
                    scalar::int(0)
                });
            }
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !scalar::is_zero(&work[r][col]))?;
        work.swap(col, pivot);
        let inv = scalar::int(1) / work[col][col].clone();
        for x in work[col].iter_mut() {
            *x = x.clone() * &inv;
        }
        for r in 0..n {
            if r != col && !scalar::is_zero(&work[r][col]) {
                let factor = work[r][col].clone();
                for c in 0..2 * n {
                    let delta = factor.clone() * &work[col][c];
                    work[r][c] = work[r][c].clone() - delta;
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Linear combination of basis elements.
pub type LieVector = Vec<Scalar>;

#[derive(Debug, Clone)]
pub struct LieSuperalgebra {
    pub name: String,
    pub basis: Vec<String>,
    pub parity: Vec<Parity>,
    /// brackets[i][j] = [e_i, e_j] as a coefficient vector.
    pub brackets: Vec<Vec<LieVector>>,
    /// Invariant graded-symmetric bilinear form.
    pub form: Matrix,
}

impl LieSuperalgebra {
    pub fn new(
        name: &str,
        basis: Vec<(&str, Parity)>,
        relations: Vec<(&str, &str, Vec<(Scalar, &str)>)>,
        form_entries: Vec<(&str, &str, Scalar)>,
    ) -> Result<Self> {
        let names: Vec<String> = basis.iter().map(|(n, _)| n.to_string()).collect();
        let parity: Vec<Parity> = basis.iter().map(|(_, p)| *p).collect();
        let dim = names.len();
        let index = |n: &str| -> Result<usize> {
            names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::BadLieData {
                    name: name.to_string(),
                    detail: format!("unknown basis element `{n}`"),
                })
        };

        let mut brackets = vec![vec![vec![scalar::int(0); dim]; dim]; dim];
        for (a, b, rhs) in relations {
            let i = index(a)?;
            let j = index(b)?;
            for (coeff, target) in rhs {
                let t = index(target)?;
                brackets[i][j][t] += coeff;
            }
            // Fill the reverse bracket by graded antisymmetry.
            let sign = if parity[i].is_odd() && parity[j].is_odd() {
                scalar::int(1)
            } else {
                scalar::int(-1)
            };
            for t in 0..dim {
                brackets[j][i][t] = brackets[i][j][t].clone() * &sign;
            }
        }

        let mut form = zeros(dim, dim);
        for (a, b, value) in form_entries {
            let i = index(a)?;
            let j = index(b)?;
            form[i][j] = value.clone();
            let sign = if parity[i].is_odd() && parity[j].is_odd() {
                scalar::int(-1)
            } else {
                scalar::int(1)
            };
            form[j][i] = value * sign;
        }

        let alg = LieSuperalgebra {
            name: name.to_string(),
            basis: names,
            parity,
            brackets,
            form,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::BadLieData {
                name: self.name.clone(),
                detail: format!("unknown basis element `{name}`"),
            })
    }

    pub fn bracket(&self, i: usize, j: usize) -> &LieVector {
        &self.brackets[i][j]
    }

    fn bracket_vectors(&self, a: &LieVector, b: &LieVector) -> LieVector {
        let dim = self.dim();
        let mut out = vec![scalar::int(0); dim];
        for i in 0..dim {
            if scalar::is_zero(&a[i]) {
                continue;
            }
            for j in 0..dim {
                if scalar::is_zero(&b[j]) {
                    continue;
                }
                let c = a[i].clone() * &b[j];
                for t in 0..dim {
                    if !scalar::is_zero(&self.brackets[i][j][t]) {
                        out[t] += c.clone() * &self.brackets[i][j][t];
                    }
                }
            }
        }
        out
    }

    fn sign(&self, i: usize, j: usize) -> Scalar {
        if self.parity[i].is_odd() && self.parity[j].is_odd() {
            scalar::int(-1)
        } else {
            scalar::int(1)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let fail = |detail: String| Error::BadLieData {
            name: self.name.clone(),
            detail,
        };
        let unit = |t: usize| -> LieVector {
            let mut v = vec![scalar::int(0); dim];
            v[t] = scalar::int(1);
            v
        };

        // Bracket parity and graded antisymmetry.
        for i in 0..dim {
            for j in 0..dim {
                let expect = self.parity[i].bit() ^ self.parity[j].bit();
                for t in 0..dim {
                    if !scalar::is_zero(&self.brackets[i][j][t]) && self.parity[t].bit() != expect {
                        return Err(fail(format!(
                            "[{}, {}] has a component of wrong parity on {}",
                            self.basis[i], self.basis[j], self.basis[t]
                        )));
                    }
                }
                let sign = self.sign(i, j);
                for t in 0..dim {
                    let back =
                        self.brackets[j][i][t].clone() + self.brackets[i][j][t].clone() * &sign;
                    if !scalar::is_zero(&back) {
                        return Err(fail(format!(
                            "graded antisymmetry fails on ({}, {})",
                            self.basis[i], self.basis[j]
                        )));
                    }
                }
            }
        }

        // Super-Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]].
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let lhs = self.bracket_vectors(&unit(i), &self.brackets[j][k]);
                    let mut rhs = self.bracket_vectors(&self.brackets[i][j], &unit(k));
                    let inner = self.bracket_vectors(&unit(j), &self.brackets[i][k]);
                    let sign = self.sign(i, j);
                    for t in 0..dim {
                        rhs[t] += sign.clone() * &inner[t];
                    }
                    for t in 0..dim {
                        if lhs[t] != rhs[t] {
                            return Err(fail(format!(
                                "Jacobi fails on ({}, {}, {})",
                                self.basis[i], self.basis[j], self.basis[k]
                            )));
                        }
                    }
                }
            }
        }

        // Form: consistency (even-odd pairing zero), graded symmetry,
        // invariance B([a,b],c) + (-1)^{|a||b|} B(b,[a,c]) = 0.
        for i in 0..dim {
            for j in 0..dim {
                if self.parity[i] != self.parity[j] && !scalar::is_zero(&self.form[i][j]) {
                    return Err(fail(format!(
                        "form pairs {} with {} across parity",
                        self.basis[i], self.basis[j]
                    )));
                }
                let back = self.form[j][i].clone() - self.form[i][j].clone() * self.sign(i, j);
                if !scalar::is_zero(&back) {
                    return Err(fail(format!(
                        "form is not graded-symmetric on ({}, {})",
                        self.basis[i], self.basis[j]
                    )));
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut lhs = scalar::int(0);
                    for t in 0..dim {
                        lhs += self.brackets[i][j][t].clone() * &self.form[t][k];
                    }
                    let mut rhs = scalar::int(0);
                    for t in 0..dim {
                        rhs += self.brackets[i][k][t].clone() * &self.form[j][t];
                    }
                    if !scalar::is_zero(&(lhs + rhs * self.sign(i, j))) {
                        return Err(fail(format!(
                            "form is not invariant at ({}, {}, {})",
                            self.basis[i], self.basis[j], self.basis[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Dual basis w.r.t. the stored form: columns of coefficients with
    /// B(dual_i, e_j) = delta_ij.
    pub fn dual_basis(&self) -> Result<Vec<LieVector>> {
        self.dual_basis_for(&self.form)
    }

    /// Dual basis w.r.t. an arbitrary form on the same basis.
    pub fn dual_basis_for(&self, form: &Matrix) -> Result<Vec<LieVector>> {
        let inv = mat_inverse(form).ok_or_else(|| Error::SingularForm(self.name.clone()))?;
        // dual_i = sum_j (B^{-1})_{ji} e_j so that B(dual_i, e_k) = delta.
        let dim = self.dim();
        Ok((0..dim)
            .map(|i| (0..dim).map(|j| inv[j][i].clone()).collect())
            .collect())
    }

    /// Adjoint representation matrices in the stored basis.
    pub fn adjoint_rep(&self) -> Representation {
        let dim = self.dim();
        let matrices = (0..dim)
            .map(|i| {
                let mut m = zeros(dim, dim);
                for j in 0..dim {
                    for t in 0..dim {
                        m[t][j] = self.brackets[i][j][t].clone();
                    }
                }
                m
            })
            .collect();
        Representation { dim, matrices }
    }

    /// Casimir eigenvalue of Sum_i e_i e'_i on the adjoint representation
    /// w.r.t. `form`; errors unless scalar. Half of it is the dual Coxeter
    /// number for that form normalization.
    pub fn casimir_on_adjoint(&self, form: &Matrix) -> Result<Scalar> {
        let ad = self.adjoint_rep();
        let duals = self.dual_basis_for(form)?;
        let dim = self.dim();
        let mut omega = zeros(dim, dim);
        for i in 0..dim {
            let mut dual_mat = zeros(dim, dim);
            for (j, coeff) in duals[i].iter().enumerate() {
                if scalar::is_zero(coeff) {
                    continue;
                }
                for r in 0..dim {
                    for c in 0..dim {
                        let delta = coeff.clone() * &ad.matrices[j][r][c];
                        dual_mat[r][c] += delta;
                    }
                }
            }
            let prod = mat_mul(&ad.matrices[i], &dual_mat);
            for r in 0..dim {
                for c in 0..dim {
                    omega[r][c] += prod[r][c].clone();
                }
            }
        }
        let eigen = omega[0][0].clone();
        for r in 0..dim {
            for c in 0..dim {
                let expect = if r == c {
                    eigen.clone()
                } else {
                    scalar::int(0)
                };
                if omega[r][c] != expect {
                    return Err(Error::NonScalarCasimir);
                }
            }
        }
        Ok(eigen)
    }

    pub fn dual_coxeter(&self, form: &Matrix) -> Result<Scalar> {
        Ok(self.casimir_on_adjoint(form)? / scalar::int(2))
    }
}

#[derive(Debug, Clone)]
pub struct Representation {
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

impl Representation {
    /// Checks rho([a,b]) = rho(a)rho(b) - rho(b)rho(a) against the algebra.
    /// Only meaningful for purely even algebras.
    pub fn validate(&self, alg: &LieSuperalgebra) -> Result<()> {
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let comm = mat_sub(
                    &mat_mul(&self.matrices[i], &self.matrices[j]),
                    &mat_mul(&self.matrices[j], &self.matrices[i]),
                );
                let mut expect = zeros(self.dim, self.dim);
                for t in 0..alg.dim() {
                    let c = &alg.brackets[i][j][t];
                    if scalar::is_zero(c) {
                        continue;
                    }
                    for r in 0..self.dim {
                        for s in 0..self.dim {
                            let delta = c.clone() * &self.matrices[t][r][s];
                            expect[r][s] += delta;
                        }
                    }
                }
                if comm != expect {
                    return Err(Error::BadLieData {
                        name: alg.name.clone(),
                        detail: format!(
                            "representation fails on ({}, {})",
                            alg.basis[i], alg.basis[j]
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Trace form B(e_i, e_j) = tr(rho(e_i) rho(e_j)).
    pub fn trace_form(&self, alg_dim: usize) -> Matrix {
        let mut b = zeros(alg_dim, alg_dim);
        for i in 0..alg_dim {
            for j in 0..alg_dim {
                b[i][j] = mat_trace(&mat_mul(&self.matrices[i], &self.matrices[j]));
            }
        }
        b
    }
}

/// sl2 in the root basis (x, y, h): [x,y] = h, [h,x] = 2x, [h,y] = -2y.
pub fn sl2() -> LieSuperalgebra {
    LieSuperalgebra::new(
        "sl2",
        vec![
            ("x", Parity::Even),
            ("y", Parity::Even),
            ("h", Parity::Even),
        ],
        vec![
            ("x", "y", vec![(scalar::int(1), "h")]),
            ("h", "x", vec![(scalar::int(2), "x")]),
            ("h", "y", vec![(scalar::int(-2), "y")]),
        ],
        vec![("x", "y", scalar::int(1)), ("h", "h", scalar::int(2))],
    )
    .expect("sl2 data is valid")
}

/// Normalized invariant form on sl2: <x,y> = 1, <h,h> = 2.
pub fn sl2_normalized_form() -> Matrix {
    sl2().form
}

/// Standard two-dimensional representation on basis (e1, e2).
pub fn sl2_standard_rep() -> Representation {
    let z = scalar::int(0);
    let rep = Representation {
        dim: 2,
        matrices: vec![
            vec![vec![z.clone(), scalar::int(1)], vec![z.clone(), z.clone()]],
            vec![vec![z.clone(), z.clone()], vec![scalar::int(1), z.clone()]],
            vec![
                vec![scalar::int(1), z.clone()],
                vec![z.clone(), scalar::int(-1)],
            ],
        ],
    };
    rep.validate(&sl2()).expect("standard rep is valid");
    rep
}

/// Adjoint representation on basis (x, y, h).
pub fn sl2_adjoint_rep() -> Representation {
    let alg = sl2();
    let rep = alg.adjoint_rep();
    rep.validate(&alg).expect("adjoint rep is valid");
    rep
}

/// osp(2|2) with even part spanned by X, Y, H, E and odd part by the four
/// F^{ee'}: Fpm = F^{+-}, Fpp = F^{++}, Fmm = F^{--}, Fmp = F^{-+}.
pub fn osp22() -> LieSuperalgebra {
    let one = scalar::int(1);
    let m1 = scalar::int(-1);
    LieSuperalgebra::new(
        "osp(2|2)",
        vec![
            ("X", Parity::Even),
            ("Y", Parity::Even),
            ("H", Parity::Even),
            ("E", Parity::Even),
            ("Fpm", Parity::Odd),
            ("Fpp", Parity::Odd),
            ("Fmm", Parity::Odd),
            ("Fmp", Parity::Odd),
        ],
        vec![
            ("X", "Y", vec![(one.clone(), "H")]),
            ("H", "X", vec![(scalar::int(2), "X")]),
            ("H", "Y", vec![(scalar::int(-2), "Y")]),
            ("E", "Fpm", vec![(m1.clone(), "Fpm")]),
            ("E", "Fpp", vec![(one.clone(), "Fpp")]),
            ("E", "Fmm", vec![(m1.clone(), "Fmm")]),
            ("E", "Fmp", vec![(one.clone(), "Fmp")]),
            ("H", "Fpm", vec![(one.clone(), "Fpm")]),
            ("H", "Fpp", vec![(one.clone(), "Fpp")]),
            ("H", "Fmm", vec![(m1.clone(), "Fmm")]),
            ("H", "Fmp", vec![(m1.clone(), "Fmp")]),
            ("Y", "Fpm", vec![(m1.clone(), "Fmm")]),
            ("Y", "Fpp", vec![(m1.clone(), "Fmp")]),
            ("X", "Fmm", vec![(m1.clone(), "Fpm")]),
            ("X", "Fmp", vec![(m1.clone(), "Fpp")]),
            ("Fpm", "Fmp", vec![(one.clone(), "H"), (one.clone(), "E")]),
            ("Fpm", "Fpp", vec![(scalar::int(2), "X")]),
            ("Fmm", "Fpp", vec![(one.clone(), "H"), (m1.clone(), "E")]),
            ("Fmm", "Fmp", vec![(scalar::int(-2), "Y")]),
        ],
        vec![
            ("H", "H", m1.clone()),
            ("X", "Y", scalar::frac(-1, 2)),
            ("E", "E", one.clone()),
            ("Fpm", "Fmp", m1),
            ("Fmm", "Fpp", one),
        ],
    )
    .expect("osp(2|2) data is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn sl2_validates_and_has_dual_coxeter_two() {
        let alg = sl2();
        assert_eq!(alg.dual_coxeter(&alg.form).unwrap(), int(2));
    }

    #[test]
    fn sl2_dual_basis_under_normalized_form() {
        let alg = sl2();
        let duals = alg.dual_basis().unwrap();
        // dual of x is y, dual of y is x, dual of h is h/2.
        assert_eq!(duals[0], vec![int(0), int(1), int(0)]);
        assert_eq!(duals[1], vec![int(1), int(0), int(0)]);
        assert_eq!(duals[2], vec![int(0), int(0), frac(1, 2)]);
    }

    #[test]
    fn adjoint_trace_form_is_four_times_normalized() {
        let alg = sl2();
        let b = sl2_adjoint_rep().trace_form(3);
        assert_eq!(b[0][1], int(4));
        assert_eq!(b[1][0], int(4));
        assert_eq!(b[2][2], int(8));
        assert_eq!(b[0][0], int(0));
        // Dual Coxeter number w.r.t. the trace form is 1/2.
        assert_eq!(alg.dual_coxeter(&b).unwrap(), frac(1, 2));
        // Dual of x w.r.t. the trace form is y/4, of h is h/8.
        let duals = alg.dual_basis_for(&b).unwrap();
        assert_eq!(duals[0], vec![int(0), frac(1, 4), int(0)]);
        assert_eq!(duals[2], vec![int(0), int(0), frac(1, 8)]);
    }

    #[test]
    fn standard_trace_form_is_normalized() {
        let b = sl2_standard_rep().trace_form(3);
        assert_eq!(b, sl2_normalized_form());
    }

    #[test]
    fn osp22_validates() {
        let alg = osp22();
        assert_eq!(alg.dim(), 8);
        // Graded symmetry on the odd block: B(Fmp, Fpm) = +1.
        let i = alg.index("Fmp").unwrap();
        let j = alg.index("Fpm").unwrap();
        assert_eq!(alg.form[i][j], int(1));
    }

    #[test]
    fn bad_jacobi_is_rejected() {
        let err = LieSuperalgebra::new(
            "broken",
            vec![
                ("a", Parity::Even),
                ("b", Parity::Even),
                ("c", Parity::Even),
            ],
            vec![
                ("a", "b", vec![(int(1), "c")]),
                ("a", "c", vec![(int(1), "c")]),
                ("b", "c", vec![(int(1), "a")]),
            ],
            vec![],
        );
        assert!(matches!(err, Err(Error::BadLieData { .. })));
    }
}
