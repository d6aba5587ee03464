//! Special Schubert cycles on the Grassmannian `G(1,n)` of lines in `Pⁿ`.
//!
//! A class is a sparse integer combination of `σ[a,b]` with
//! `n-1 ≥ a ≥ b ≥ 0`. Multiplication by the hyperplane class `σ₁` follows
//! Pieri's rule; everything else here is built on top of it.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchubertError {
    #[error("ambient dimension must be at least 2, got {0}")]
    AmbientTooSmall(u32),
    #[error("index pair ({a},{b}) invalid for G(1,{n})")]
    BadIndex { n: u32, a: u32, b: u32 },
    #[error("exponent {l} out of range 1..={max} for the closed form")]
    ExponentOutOfRange { l: u32, max: u32 },
    #[error("class is not homogeneous of codimension {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("multidegree for n={n} must have {expected} entries, got {got}")]
    MultidegreeLength { n: u32, expected: usize, got: usize },
    #[error("multidegree entries must be nonnegative")]
    NegativeDegree,
}

/// Integer combination of special Schubert cycles `σ[a,b]` on `G(1,n)`.
///
/// Terms are kept in decreasing `(a, b)` order and zero coefficients are
/// never stored, so structural equality is class equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SchubertClass {
    n: u32,
    coeffs: BTreeMap<Reverse<(u32, u32)>, BigInt>,
}

impl SchubertClass {
    pub fn zero(n: u32) -> Result<Self, SchubertError> {
        if n < 2 {
            return Err(SchubertError::AmbientTooSmall(n));
        }
        Ok(Self {
            n,
            coeffs: BTreeMap::new(),
        })
    }

    /// The fundamental class `σ[0,0]`.
    pub fn unit(n: u32) -> Result<Self, SchubertError> {
        Self::cycle(n, 0, 0)
    }

    pub fn cycle(n: u32, a: u32, b: u32) -> Result<Self, SchubertError> {
        let mut c = Self::zero(n)?;
        c.add_term(a, b, BigInt::one())?;
        Ok(c)
    }

    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = ((u32, u32), i64)>) -> Result<Self, SchubertError> {
        let mut c = Self::zero(n)?;
        for ((a, b), k) in terms {
            c.add_term(a, b, BigInt::from(k))?;
        }
        Ok(c)
    }

    pub fn add_term(&mut self, a: u32, b: u32, k: BigInt) -> Result<(), SchubertError> {
        if a > self.n - 1 || b > a {
            return Err(SchubertError::BadIndex { n: self.n, a, b });
        }
        if k.is_zero() {
            return Ok(());
        }
        let key = Reverse((a, b));
        let slot = self.coeffs.entry(key).or_insert_with(BigInt::zero);
        *slot += k;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, a: u32, b: u32) -> BigInt {
        self.coeffs.get(&Reverse((a, b))).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in canonical order (`a` descending, then `b` descending).
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(Reverse(ab), k)| (*ab, k))
    }

    pub fn is_homogeneous_of(&self, codim: u32) -> bool {
        self.terms().all(|((a, b), _)| a + b == codim)
    }

    /// Pieri: `σ₁·σ[a,b] = σ[a+1,b] + σ[a,b+1]`, dropping terms that leave
    /// `n-1 ≥ a ≥ b`.
    pub fn pieri_sigma1(&self) -> Self {
        let mut out = Self {
            n: self.n,
            coeffs: BTreeMap::new(),
        };
        for ((a, b), k) in self.terms() {
            if a + 1 < self.n {
                out.add_term(a + 1, b, k.clone()).expect("index checked");
            }
            if b < a {
                out.add_term(a, b + 1, k.clone()).expect("index checked");
            }
        }
        out
    }
}

impl Add for &SchubertClass {
    type Output = SchubertClass;
    fn add(self, rhs: &SchubertClass) -> SchubertClass {
        assert_eq!(self.n, rhs.n, "classes live on different Grassmannians");
        let mut out = self.clone();
        for ((a, b), k) in rhs.terms() {
            out.add_term(a, b, k.clone()).expect("valid index");
        }
        out
    }
}

impl fmt::Display for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, b), k)) in self.terms().enumerate() {
            let neg = k < &BigInt::zero();
            let abs = if neg { -k } else { k.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "σ[{a},{b}]")?;
            } else {
                write!(f, "{abs}σ[{a},{b}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(1,{}): {}", self.n, self)
    }
}

pub fn pieri_sigma1(c: &SchubertClass) -> SchubertClass {
    c.pieri_sigma1()
}

/// `σ₁^ℓ = Σ_{i ≤ ⌊ℓ/2⌋} (C(ℓ-1,i) - C(ℓ-1,i-2)) σ[ℓ-i,i]`, valid for
/// `1 ≤ ℓ ≤ n-1` (no truncation happens in that range).
pub fn sigma1_power_closed(n: u32, l: u32) -> Result<SchubertClass, SchubertError> {
    let mut c = SchubertClass::zero(n)?;
    if l < 1 || l > n - 1 {
        return Err(SchubertError::ExponentOutOfRange { l, max: n - 1 });
    }
    let l = i64::from(l);
    for i in 0..=l / 2 {
        let k = binomial(l - 1, i) - binomial(l - 1, i - 2);
        c.add_term((l - i) as u32, i as u32, k)?;
    }
    Ok(c)
}

/// `σ₁^ℓ` by `ℓ` applications of Pieri's rule to `σ[0,0]`; valid for every `ℓ`.
pub fn sigma1_power_iterative(n: u32, l: u32) -> Result<SchubertClass, SchubertError> {
    let mut c = SchubertClass::unit(n)?;
    for _ in 0..l {
        c = c.pieri_sigma1();
    }
    Ok(c)
}

/// Multidegree `(a₀,…,a_ν)` of a congruence, `ν = ⌊(n-1)/2⌋`: the
/// coefficients of its class on the basis `σ[n-1-i, i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multidegree {
    n: u32,
    degrees: Vec<BigInt>,
}

impl Multidegree {
    pub fn new(n: u32, degrees: Vec<BigInt>) -> Result<Self, SchubertError> {
        if n < 2 {
            return Err(SchubertError::AmbientTooSmall(n));
        }
        let expected = Self::len_for(n);
        if degrees.len() != expected {
            return Err(SchubertError::MultidegreeLength {
                n,
                expected,
                got: degrees.len(),
            });
        }
        if degrees.iter().any(|d| d < &BigInt::zero()) {
            return Err(SchubertError::NegativeDegree);
        }
        Ok(Self { n, degrees })
    }

    pub fn from_i64(n: u32, degrees: &[i64]) -> Result<Self, SchubertError> {
        Self::new(n, degrees.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn len_for(n: u32) -> usize {
        ((n - 1) / 2 + 1) as usize
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[BigInt] {
        &self.degrees
    }

    /// Number of lines through a general point.
    pub fn order(&self) -> &BigInt {
        &self.degrees[0]
    }

    pub fn is_first_order(&self) -> bool {
        self.order().is_one()
    }

    /// `Σ aᵢ σ[n-1-i, i]`.
    pub fn to_class(&self) -> SchubertClass {
        let mut c = SchubertClass::zero(self.n).expect("n validated");
        for (i, a) in self.degrees.iter().enumerate() {
            let i = i as u32;
            c.add_term(self.n - 1 - i, i, a.clone()).expect("valid index");
        }
        c
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn multidegree_of(c: &SchubertClass) -> Result<Multidegree, SchubertError> {
    let n = c.n();
    if !c.is_homogeneous_of(n - 1) {
        return Err(SchubertError::NotHomogeneous { expected: n - 1 });
    }
    let degrees = (0..Multidegree::len_for(n) as u32)
        .map(|i| c.coefficient(n - 1 - i, i))
        .collect();
    Multidegree::new(n, degrees)
}

/// Intersection number `σ[n-1-i,i] · σ₁^(n-1)`, i.e. `C(n-2,i) - C(n-2,i-2)`.
fn pairing_weight(n: u32, i: usize) -> BigInt {
    let (n, i) = (i64::from(n), i as i64);
    binomial(n - 2, i) - binomial(n - 2, i - 2)
}

/// Degree in the Plücker embedding, via the self-dual pairing of
/// `σ[n-1-i,i]` against `σ₁^(n-1)`.
pub fn plucker_degree(m: &Multidegree) -> BigInt {
    m.degrees
        .iter()
        .enumerate()
        .map(|(i, a)| a * pairing_weight(m.n, i))
        .sum()
}

/// Independent route: the `σ[n-1,n-1]` coefficient of `[B]·σ₁^(n-1)`
/// computed with iterated Pieri.
pub fn plucker_degree_by_pieri(m: &Multidegree) -> BigInt {
    let mut c = m.to_class();
    for _ in 0..m.n - 1 {
        c = c.pieri_sigma1();
    }
    c.coefficient(m.n - 1, m.n - 1)
}

/// The alternative weighting `Σ aᵢ·C(n,i)(n-2i+1)/(n-i+1)`. It does not agree
/// with the Grassmannian degree (for `(1,3,2)` on `G(1,5)` it gives 23, not
/// 14) and is kept only so the mismatch can be reported next to
/// [`plucker_degree`].
pub fn alternative_weighted_degree(m: &Multidegree) -> Rational {
    let n = i64::from(m.n);
    m.degrees
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let i = i as i64;
            Rational::from_integer(a * binomial(n, i)) * Rational::new((n - 2 * i + 1).into(), (n - i + 1).into())
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Multidegree of a general linear section of `G(1,n)` by `n-1` hyperplanes:
/// `aᵢ = C(n-2,i) - C(n-2,i-2)`.
pub fn linear_congruence_multidegree(n: u32) -> Result<Multidegree, SchubertError> {
    if n < 2 {
        return Err(SchubertError::AmbientTooSmall(n));
    }
    let degrees = (0..Multidegree::len_for(n)).map(|i| pairing_weight(n, i)).collect();
    Multidegree::new(n, degrees)
}

/// `deg G(1,n) = C(2n-2, n) / (n-1)`.
pub fn grassmannian_degree(n: u32) -> Result<BigInt, SchubertError> {
    if n < 2 {
        return Err(SchubertError::AmbientTooSmall(n));
    }
    let n = i64::from(n);
    Ok(binomial(2 * n - 2, n) / BigInt::from(n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(n: u32, terms: &[((u32, u32), i64)]) -> SchubertClass {
        SchubertClass::from_terms(n, terms.iter().copied()).unwrap()
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_sigma1(&SchubertClass::unit(5).unwrap()), class(5, &[((1, 0), 1)]));
        assert_eq!(pieri_sigma1(&class(5, &[((1, 1), 1)])), class(5, &[((2, 1), 1)]));
        assert_eq!(pieri_sigma1(&class(4, &[((3, 2), 1)])), class(4, &[((3, 3), 1)]));
        assert!(pieri_sigma1(&class(3, &[((2, 2), 1)])).is_zero());
    }

    #[test]
    fn closed_power_examples() {
        // Oracle: three Pieri steps by hand from σ[0,0].
        let expected = class(5, &[((3, 0), 1), ((2, 1), 2)]);
        assert_eq!(sigma1_power_closed(5, 3).unwrap(), expected);
        assert_eq!(sigma1_power_closed(4, 3).unwrap(), class(4, &[((3, 0), 1), ((2, 1), 2)]));
        assert_eq!(sigma1_power_closed(9, 1).unwrap(), class(9, &[((1, 0), 1)]));
        assert_eq!(
            sigma1_power_closed(4, 4),
            Err(SchubertError::ExponentOutOfRange { l: 4, max: 3 })
        );
        assert!(sigma1_power_closed(4, 0).is_err());
    }

    #[test]
    fn iterative_power_examples() {
        assert_eq!(sigma1_power_iterative(3, 4).unwrap(), class(3, &[((2, 2), 2)]));
        assert_eq!(sigma1_power_iterative(4, 6).unwrap(), class(4, &[((3, 3), 5)]));
        assert_eq!(sigma1_power_iterative(7, 0).unwrap(), SchubertClass::unit(7).unwrap());
    }

    #[test]
    fn multidegree_extraction() {
        let c = class(5, &[((4, 0), 1), ((3, 1), 3), ((2, 2), 2)]);
        assert_eq!(multidegree_of(&c).unwrap(), Multidegree::from_i64(5, &[1, 3, 2]).unwrap());
        let c = class(4, &[((3, 0), 1), ((2, 1), 2)]);
        assert_eq!(multidegree_of(&c).unwrap(), Multidegree::from_i64(4, &[1, 2]).unwrap());
        let c = class(3, &[((2, 0), 1)]);
        assert_eq!(multidegree_of(&c).unwrap(), Multidegree::from_i64(3, &[1, 0]).unwrap());
        let mixed = class(5, &[((4, 0), 1), ((1, 0), 1)]);
        assert_eq!(multidegree_of(&mixed), Err(SchubertError::NotHomogeneous { expected: 4 }));
    }

    #[test]
    fn plucker_degree_examples() {
        let m = Multidegree::from_i64(5, &[1, 3, 2]).unwrap();
        assert_eq!(plucker_degree(&m), BigInt::from(14));
        assert_eq!(plucker_degree_by_pieri(&m), BigInt::from(14));
        let m = Multidegree::from_i64(4, &[1, 2]).unwrap();
        assert_eq!(plucker_degree_by_pieri(&m), BigInt::from(5));
        assert_eq!(plucker_degree(&m), BigInt::from(5));
        assert_eq!(plucker_degree(&Multidegree::from_i64(3, &[1, 1]).unwrap()), BigInt::from(2));
    }

    #[test]
    fn alternative_weighting_disagrees() {
        let m = Multidegree::from_i64(5, &[1, 3, 2]).unwrap();
        assert_eq!(alternative_weighted_degree(&m), Rational::from_integer(23.into()));
    }

    #[test]
    fn linear_congruence_examples() {
        assert_eq!(linear_congruence_multidegree(5).unwrap().to_string(), "(1,3,2)");
        assert_eq!(linear_congruence_multidegree(4).unwrap().to_string(), "(1,2)");
        let m6 = linear_congruence_multidegree(6).unwrap();
        assert_eq!(m6.to_string(), "(1,4,5)");
        let squares: BigInt = m6.degrees().iter().map(|a| a * a).sum();
        assert_eq!(squares, grassmannian_degree(6).unwrap());
        assert_eq!(squares, BigInt::from(42));
        for n in 2..12 {
            assert!(linear_congruence_multidegree(n).unwrap().is_first_order());
        }
    }

    #[test]
    fn grassmannian_degree_examples() {
        let coeff = sigma1_power_iterative(3, 4).unwrap().coefficient(2, 2);
        assert_eq!(grassmannian_degree(3).unwrap(), coeff);
        assert_eq!(grassmannian_degree(5).unwrap(), BigInt::from(14));
        assert_eq!(grassmannian_degree(2).unwrap(), BigInt::from(1));
        assert!(grassmannian_degree(1).is_err());
    }

    #[test]
    fn closed_form_matches_iteration() {
        for n in 2..=10 {
            for l in 1..n {
                assert_eq!(sigma1_power_closed(n, l).unwrap(), sigma1_power_iterative(n, l).unwrap(), "n={n} l={l}");
            }
        }
    }

    #[test]
    fn binomial_identity_exact() {
        for l in 1i64..=12 {
            for i in 0..=l / 2 {
                let lhs = Rational::from_integer(binomial(l - 1, i) - binomial(l - 1, i - 2));
                let rhs = Rational::from_integer(binomial(l, i)) * Rational::new((l - 2 * i + 1).into(), (l - i + 1).into());
                assert_eq!(lhs, rhs, "l={l} i={i}");
            }
        }
    }

    #[test]
    fn linear_section_preserves_degree() {
        for n in 2..=10 {
            let m = linear_congruence_multidegree(n).unwrap();
            assert_eq!(plucker_degree(&m), grassmannian_degree(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn display_format() {
        let c = class(5, &[((2, 1), 2), ((3, 0), 1), ((2, 2), -1)]);
        assert_eq!(c.to_string(), "σ[3,0] - σ[2,2] + 2σ[2,1]");
        assert_eq!(SchubertClass::zero(4).unwrap().to_string(), "0");
    }

    fn random_class(n: u32) -> impl Strategy<Value = SchubertClass> {
        proptest::collection::vec((0..n, 0..n, -5i64..=5), 0..6).prop_map(move |ts| {
            let terms = ts.into_iter().map(|(a, b, k)| ((a.max(b), a.min(b)), k));
            SchubertClass::from_terms(n, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn pairing_matches_pieri(n in 3u32..=7, raw in proptest::collection::vec(0i64..50, 4)) {
            let len = Multidegree::len_for(n);
            let m = Multidegree::from_i64(n, &raw[..len]).unwrap();
            prop_assert_eq!(plucker_degree(&m), plucker_degree_by_pieri(&m));
        }

        #[test]
        fn pieri_is_linear((c1, c2) in (2u32..8).prop_flat_map(|n| (random_class(n), random_class(n)))) {
            prop_assert_eq!(pieri_sigma1(&(&c1 + &c2)), &pieri_sigma1(&c1) + &pieri_sigma1(&c2));
        }
    }
}
