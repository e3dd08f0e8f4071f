//! Exact rational coefficients.
//!
//! Every coefficient in the engine is a `BigRational` kept in lowest terms
//! by the underlying library. Nothing in the crate ever rounds.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Scalar = BigRational;

/// Integer as a scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Reduced fraction `n/d`. Panics on a zero denominator.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(s: &Scalar) -> bool {
    s.is_zero()
}

pub fn is_one(s: &Scalar) -> bool {
    s.is_one()
}

/// Generalized binomial coefficient `binom(top, k)` with an arbitrary
/// integer top row, e.g. `binom(-2, 3) = -4`. Always an integer.
pub fn binomial(top: i64, k: u32) -> Scalar {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(top - i);
        den *= BigInt::from(i + 1);
    }
    Scalar::new(num, den)
}

/// `1/n!` as a scalar.
pub fn inv_factorial(n: u32) -> Scalar {
    let mut f = BigInt::one();
    for i in 2..=n as i64 {
        f *= BigInt::from(i);
    }
    Scalar::new(BigInt::one(), f)
}

/// Renders `p/q` as `p` when `q == 1`, else `p/q`.
pub fn render(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `p` or `p/q`, with an optional leading sign.
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Scalar::new(n, d))
            }
        }
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(Scalar::from_integer(n))
        }
    }
}

/// Sign as -1, 0 or 1.
pub fn signum(s: &Scalar) -> i32 {
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_extends_to_negative_tops() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(2, 5), int(0));
        // binom(-m, j) = (-1)^j binom(m + j - 1, j)
        assert_eq!(binomial(-1, 3), int(-1));
        assert_eq!(binomial(-2, 3), int(-4));
        assert_eq!(binomial(-3, 2), int(6));
    }

    #[test]
    fn render_and_parse_round_trip() {
        for s in [int(0), int(-7), frac(3, 2), frac(-5, 6)] {
            assert_eq!(parse(&render(&s)).unwrap(), s);
        }
        assert_eq!(render(&frac(4, 2)), "2");
        assert!(parse("1/0").is_none());
    }

    #[test]
    fn inv_factorial_values() {
        assert_eq!(inv_factorial(0), int(1));
        assert_eq!(inv_factorial(1), int(1));
        assert_eq!(inv_factorial(4), frac(1, 24));
    }
}
