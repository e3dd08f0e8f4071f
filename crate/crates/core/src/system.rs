//! Generator tables for free-field systems.
//!
//! A system is a finite list of generating fields, each with a parity, a
//! default conformal weight, and integer charges, together with a table of
//! scalar contractions
//!
//! ```text
//! g(z) h(w) ~ sum_k  c_k(g, h) (z - w)^{-k-1},      k >= 0.
//! ```
//!
//! All c_k are scalars (multiples of the vacuum); that restriction is what
//! the whole calculus relies on. The table must be skew-consistent:
//!
//! ```text
//! c_k(h, g) = (-1)^{|g||h| + k + 1} c_k(g, h),
//! ```
//!
//! which is the constant part of the skew-symmetry of circle products, and
//! is validated when the system is built.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// 0 for even, 1 for odd.
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub name: String,
    pub parity: Parity,
    /// Default conformal weight used for grading. Weights are grading data
    /// only; they never enter the algebraic recursions.
    pub weight: Scalar,
    /// Aligned with `FreeFieldSystem::charge_names`.
    pub charges: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct FreeFieldSystem {
    pub name: String,
    pub generators: Vec<GeneratorSpec>,
    pub charge_names: Vec<String>,
    /// (left index, right index) -> order k -> c_k. Stored for both
    /// argument orders explicitly and checked for skew-consistency.
    contractions: BTreeMap<(usize, usize), BTreeMap<i64, Scalar>>,
    /// Largest k with any nonzero c_k, or -1 when the table is empty.
    max_order: i64,
}

impl FreeFieldSystem {
    /// Builds and validates a system. `contractions` entries are
    /// (left name, right name, order k, c_k); both orders of each pair must
    /// be present (or both omitted when a side is forced to zero by
    /// skew-consistency, which for constants never happens: c != 0 forces
    /// the reverse entry to be nonzero too).
    pub fn new(
        name: &str,
        generators: Vec<GeneratorSpec>,
        charge_names: Vec<String>,
        contractions: Vec<(String, String, i64, Scalar)>,
    ) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if seen.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
            if g.charges.len() != charge_names.len() {
                return Err(Error::Other(format!(
                    "generator `{}` declares {} charges, system has {}",
                    g.name,
                    g.charges.len(),
                    charge_names.len()
                )));
            }
        }

        let mut table: BTreeMap<(usize, usize), BTreeMap<i64, Scalar>> = BTreeMap::new();
        let mut max_order = -1i64;
        for (left, right, k, c) in contractions {
            let li = *seen
                .get(&left)
                .ok_or_else(|| Error::UnknownGenerator(left.clone()))?;
            let ri = *seen
                .get(&right)
                .ok_or_else(|| Error::UnknownGenerator(right.clone()))?;
            if k < 0 {
                return Err(Error::NegativeContractionOrder {
                    left,
                    right,
                    order: k,
                });
            }
            if scalar::is_zero(&c) {
                continue;
            }
            if generators[li].parity != generators[ri].parity {
                return Err(Error::ParityMismatch { left, right });
            }
            max_order = max_order.max(k);
            let entry = table.entry((li, ri)).or_default();
            if entry.insert(k, c).is_some() {
                return Err(Error::Other(format!(
                    "duplicate contraction entry ({left}, {right}) at order {k}"
                )));
            }
        }

        let sys = FreeFieldSystem {
            name: name.to_string(),
            generators,
            charge_names,
            contractions: table,
            max_order,
        };
        sys.validate_skew()?;
        Ok(sys)
    }

    fn validate_skew(&self) -> Result<()> {
        for (&(li, ri), orders) in &self.contractions {
            for (&k, c) in orders {
                let parity_sign =
                    if self.generators[li].parity.is_odd() && self.generators[ri].parity.is_odd() {
                        -1
                    } else {
                        1
                    };
                let total = if (k + 1) % 2 == 0 {
                    parity_sign
                } else {
                    -parity_sign
                };
                let required = scalar::int(total) * c;
                let reverse = self.contraction(ri, li, k);
                if reverse != required {
                    return Err(Error::SkewInconsistent {
                        left: self.generators[li].name.clone(),
                        right: self.generators[ri].name.clone(),
                        order: k,
                        forward: scalar::render(c),
                        reverse: scalar::render(&reverse),
                        required: scalar::render(&required),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen_name(&self, index: usize) -> &str {
        &self.generators[index].name
    }

    pub fn parity(&self, index: usize) -> Parity {
        self.generators[index].parity
    }

    pub fn charge_index(&self, name: &str) -> Result<usize> {
        self.charge_names
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownCharge(name.to_string()))
    }

    /// c_k(left, right), zero when absent.
    pub fn contraction(&self, left: usize, right: usize, k: i64) -> Scalar {
        self.contractions
            .get(&(left, right))
            .and_then(|m| m.get(&k))
            .cloned()
            .unwrap_or_else(|| scalar::int(0))
    }

    /// All nonzero contraction orders for an ordered pair.
    pub fn contraction_orders(&self, left: usize, right: usize) -> Vec<(i64, Scalar)> {
        self.contractions
            .get(&(left, right))
            .map(|m| m.iter().map(|(k, c)| (*k, c.clone())).collect())
            .unwrap_or_default()
    }

    /// Iterator over all stored (left, right, k, c_k).
    pub fn all_contractions(&self) -> impl Iterator<Item = (usize, usize, i64, &Scalar)> {
        self.contractions
            .iter()
            .flat_map(|(&(l, r), m)| m.iter().map(move |(&k, c)| (l, r, k, c)))
    }

    /// Largest contraction order in the table (-1 when empty).
    pub fn max_contraction_order(&self) -> i64 {
        self.max_order
    }

    /// Disjoint union of two systems: generators concatenate, charge names
    /// merge by name, and no cross-contractions are introduced.
    pub fn tensor(name: &str, a: &FreeFieldSystem, b: &FreeFieldSystem) -> Result<Self> {
        let mut charge_names = a.charge_names.clone();
        for c in &b.charge_names {
            if !charge_names.contains(c) {
                charge_names.push(c.clone());
            }
        }
        let relabel = |sys: &FreeFieldSystem, g: &GeneratorSpec| -> GeneratorSpec {
            let charges = charge_names
                .iter()
                .map(|name| {
                    sys.charge_names
                        .iter()
                        .position(|c| c == name)
                        .map(|i| g.charges[i])
                        .unwrap_or(0)
                })
                .collect();
            GeneratorSpec {
                name: g.name.clone(),
                parity: g.parity,
                weight: g.weight.clone(),
                charges,
            }
        };
        let generators = a
            .generators
            .iter()
            .map(|g| relabel(a, g))
            .chain(b.generators.iter().map(|g| relabel(b, g)))
            .collect();
        let contractions = a
            .all_contractions()
            .map(|(l, r, k, c)| {
                (
                    a.gen_name(l).to_string(),
                    a.gen_name(r).to_string(),
                    k,
                    c.clone(),
                )
            })
            .chain(b.all_contractions().map(|(l, r, k, c)| {
                (
                    b.gen_name(l).to_string(),
                    b.gen_name(r).to_string(),
                    k,
                    c.clone(),
                )
            }))
            .collect();
        FreeFieldSystem::new(name, generators, charge_names, contractions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn gen(name: &str, parity: Parity, charges: Vec<i64>) -> GeneratorSpec {
        GeneratorSpec {
            name: name.to_string(),
            parity,
            weight: scalar::frac(1, 2),
            charges,
        }
    }

    #[test]
    fn skew_consistency_accepts_symmetric_odd_pair() {
        // b(z)c(w) ~ (z-w)^{-1} and c(z)b(w) ~ (z-w)^{-1}: both odd, k = 0,
        // sign (-1)^{1+0+1} = +1.
        let sys = FreeFieldSystem::new(
            "bc",
            vec![
                gen("b", Parity::Odd, vec![-1]),
                gen("c", Parity::Odd, vec![1]),
            ],
            vec!["F".into()],
            vec![
                ("b".into(), "c".into(), 0, int(1)),
                ("c".into(), "b".into(), 0, int(1)),
            ],
        );
        assert!(sys.is_ok());
    }

    #[test]
    fn skew_consistency_rejects_wrong_sign() {
        // For an even pair at order 0 the reverse entry must flip sign.
        let sys = FreeFieldSystem::new(
            "bg",
            vec![
                gen("beta", Parity::Even, vec![0]),
                gen("gamma", Parity::Even, vec![0]),
            ],
            vec!["H".into()],
            vec![
                ("beta".into(), "gamma".into(), 0, int(1)),
                ("gamma".into(), "beta".into(), 0, int(1)),
            ],
        );
        assert!(matches!(sys, Err(Error::SkewInconsistent { .. })));
    }

    #[test]
    fn parity_mismatch_rejected() {
        let sys = FreeFieldSystem::new(
            "odd-even",
            vec![
                gen("b", Parity::Odd, vec![]),
                gen("j", Parity::Even, vec![]),
            ],
            vec![],
            vec![
                ("b".into(), "j".into(), 0, int(1)),
                ("j".into(), "b".into(), 0, int(1)),
            ],
        );
        assert!(matches!(sys, Err(Error::ParityMismatch { .. })));
    }

    #[test]
    fn tensor_merges_charges_by_name() {
        let a = FreeFieldSystem::new(
            "A",
            vec![gen("b", Parity::Odd, vec![-1, 2])],
            vec!["F".into(), "wh".into()],
            vec![],
        )
        .unwrap();
        let b = FreeFieldSystem::new(
            "B",
            vec![gen("beta", Parity::Even, vec![-1, 2])],
            vec!["H".into(), "wh".into()],
            vec![],
        )
        .unwrap();
        let w = FreeFieldSystem::tensor("W", &a, &b).unwrap();
        assert_eq!(w.charge_names, vec!["F", "wh", "H"]);
        assert_eq!(w.generators[0].charges, vec![-1, 2, 0]);
        assert_eq!(w.generators[1].charges, vec![0, 2, -1]);
    }
}
