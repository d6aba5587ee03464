//! Exact arithmetic substrate: rationals, fraction-free linear algebra,
//! sparse multivariate polynomials, Pfaffians and binary forms.
//!
//! Nothing in here touches floating point.

mod binary;
mod matrix;
mod pfaffian;
mod poly;
mod random;

pub use binary::{binary_gcd, resultant, verify_gcd, BinaryForm};
pub use matrix::{rank_and_kernel, RationalMatrix};
pub use pfaffian::{determinant, pfaffian, PolyMatrix};
pub use poly::{Monomial, MultiPoly};
pub use random::{derive_seed, seeded_random_matrix, DEFAULT_BOUND};
pub(crate) use random::seeded_random_point;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("matrix is not skew-symmetric (entry ({row}, {col}))")]
    NotSkew { row: usize, col: usize },
    #[error("Pfaffian requires an even dimension, got {0}")]
    OddSize(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("binary_gcd needs at least one form")]
    EmptyInput,
    #[error("skew-symmetric draw requires rows == cols (got {rows}x{cols})")]
    SkewShape { rows: usize, cols: usize },
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("rows have inconsistent lengths")]
    Ragged,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("coefficient too large for rational root search")]
    RootSearchTooLarge,
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Formats as `p/q`, or as a bare integer when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. The zero vector is returned unchanged.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let first_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if first_negative {
        g = -g;
    }
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    ints
}

/// Canonical representative of a projective point: primitive integer
/// coordinates, first nonzero coordinate positive.
pub fn normalize_point(v: &[Rational]) -> Vec<Rational> {
    primitive_integer_vector(v)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

/// JSON encoding of a rational as decimal strings, `{"num": .., "den": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for JsonRational {
    fn from(r: &Rational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&Rational::new(BigInt::from(-6), BigInt::from(4))), "-3/2");
        assert_eq!(parse_rational(" -3/2 "), Some(Rational::new((-3).into(), 2.into())));
        assert_eq!(parse_rational("4/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn rationals_stay_reduced() {
        let r = Rational::new(BigInt::from(10), BigInt::from(-4));
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        let s = &r * &Rational::new(BigInt::from(4), BigInt::from(5));
        assert_eq!(s, int(-2));
        assert!(is_integral(&s));
    }

    #[test]
    fn point_normalization() {
        let p = vec![int(0), Rational::new((-2).into(), 3.into()), int(4)];
        assert_eq!(normalize_point(&p), vec![int(0), int(1), int(-6)]);
        assert_eq!(normalize_point(&[int(0), int(0)]), vec![int(0), int(0)]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(18, 10), BigInt::from(43758));
    }
}
