use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{format_rational, int, primitive_integer_vector, ExactError, Rational, RationalMatrix};

/// Homogeneous polynomial in `(s, t)`. Index `k` of `coeffs` holds the
/// coefficient of `s^(degree-k) t^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rational>,
    zero: bool,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree+1 coefficients");
        let zero = coeffs.iter().all(Zero::is_zero);
        Self {
            degree: coeffs.len() - 1,
            coeffs,
            zero,
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![Rational::zero(); degree + 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The linear form `a·s + b·t`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * pow(s, self.degree - k) * pow(t, k);
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.degree + other.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        if self.degree != other.degree {
            return Err(ExactError::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Swaps the roles of `s` and `t`.
    pub fn swap_variables(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Multiplicity of the root `(1:0)`, i.e. the power of `t` dividing the form.
    fn t_power(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.degree)
    }

    /// Dehomogenization in `x = s/t`: returns `g` with `f = t^degree · g(s/t)`.
    fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `t^t_power · homogenization of g`, of degree `deg g + t_power`.
    fn from_parts(g: &UniPoly, t_power: usize) -> Self {
        let dg = g.degree().expect("nonzero polynomial");
        let mut coeffs = vec![Rational::zero(); dg + t_power + 1];
        for (j, c) in g.coeffs.iter().enumerate() {
            coeffs[dg + t_power - j] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Exact quotient; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.zero || divisor.degree > self.degree {
            return None;
        }
        if self.zero {
            return Some(Self::zero(self.degree - divisor.degree));
        }
        let (mf, md) = (self.t_power(), divisor.t_power());
        if md > mf {
            return None;
        }
        let (q, r) = self.dehomogenize().div_rem(&divisor.dehomogenize());
        if !r.is_zero() {
            return None;
        }
        let out = Self::from_parts(&q, mf - md);
        debug_assert_eq!(out.degree, self.degree - divisor.degree);
        Some(out)
    }

    /// Projective rational roots `(s:t)`, normalized to primitive integers
    /// with the first nonzero coordinate positive. Multiplicities are ignored.
    pub fn rational_roots(&self) -> Result<Vec<(Rational, Rational)>, ExactError> {
        if self.zero {
            return Ok(Vec::new());
        }
        let mut roots = Vec::new();
        if self.t_power() > 0 {
            roots.push((Rational::one(), Rational::zero()));
        }
        let g = self.dehomogenize().strip_low_zeros();
        let (g, x_power) = g;
        if x_power > 0 {
            roots.push((Rational::zero(), Rational::one()));
        }
        if g.degree().unwrap_or(0) == 0 {
            return Ok(roots);
        }
        let ints = primitive_integer_vector(&g.coeffs);
        let constant = ints.first().expect("nonzero").abs();
        let leading = ints.last().expect("nonzero").abs();
        let ps = divisors(&constant)?;
        let qs = divisors(&leading)?;
        let mut xs: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let x = Rational::new(p * BigInt::from(sign), q.clone());
                    if !xs.contains(&x) && g.eval(&x).is_zero() {
                        xs.push(x);
                    }
                }
            }
        }
        xs.sort();
        for x in xs {
            let v = primitive_integer_vector(&[x, Rational::one()]);
            roots.push((Rational::from_integer(v[0].clone()), Rational::from_integer(v[1].clone())));
        }
        Ok(roots)
    }
}

fn pow(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

const ROOT_SEARCH_LIMIT: u64 = 1 << 48;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, ExactError> {
    let n = n.to_u64().filter(|&v| v <= ROOT_SEARCH_LIMIT).ok_or(ExactError::RootSearchTooLarge)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn strip_low_zeros(&self) -> (Self, usize) {
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        (Self::new(self.coeffs[k..].to_vec()), k)
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if self.coeffs.len() <= dd {
            return (Self::new(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); self.coeffs.len() - dd];
        let lead = d.coeffs[dd].clone();
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

/// Monic greatest common divisor of the nonzero forms. Identically zero
/// forms are skipped; if every form is zero the zero form is returned.
///
/// Powers of `t` are tracked separately and Euclid runs on the
/// dehomogenizations in `s/t`. The result is normalized so that its
/// coefficient of `s^(deg - m) t^m`, with `m` its `t`-power, equals one.
pub fn binary_gcd(forms: &[BinaryForm]) -> Result<BinaryForm, ExactError> {
    if forms.is_empty() {
        return Err(ExactError::EmptyInput);
    }
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.zero).collect();
    if nonzero.is_empty() {
        return Ok(BinaryForm::zero(0));
    }
    let t_power = nonzero.iter().map(|f| f.t_power()).min().expect("nonempty");
    let mut g = nonzero[0].dehomogenize().strip_low_zeros().0;
    for f in &nonzero[1..] {
        if g.degree() == Some(0) {
            break;
        }
        g = g.gcd(&f.dehomogenize().strip_low_zeros().0);
    }
    let g = g.monic();
    // Re-insert the factor s^k common to all inputs (roots at x = 0).
    let s_power = nonzero
        .iter()
        .map(|f| f.dehomogenize().strip_low_zeros().1)
        .min()
        .expect("nonempty");
    let mut shifted = vec![Rational::zero(); s_power];
    shifted.extend(g.coeffs.iter().cloned());
    let out = BinaryForm::from_parts(&UniPoly::new(shifted), t_power);
    debug_assert!(verify_gcd(forms, &out), "gcd postcondition failed");
    Ok(out)
}

/// Checks that `g` divides every nonzero form and that the cofactors have no
/// common root.
pub fn verify_gcd(forms: &[BinaryForm], g: &BinaryForm) -> bool {
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.zero).collect();
    if nonzero.is_empty() {
        return g.zero;
    }
    let Some(quotients) = nonzero.iter().map(|f| f.div_exact(g)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let t_free = quotients.iter().any(|q| q.t_power() == 0);
    let s_free = quotients.iter().any(|q| q.swap_variables().t_power() == 0);
    let mut h = quotients[0].dehomogenize();
    for q in &quotients[1..] {
        h = h.gcd(&q.dehomogenize());
    }
    t_free && s_free && h.strip_low_zeros().0.degree() == Some(0)
}

/// Resultant of two binary forms via the Sylvester matrix; vanishes exactly
/// when the forms share a projective root.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Rational {
    let (m, n) = (f.degree, g.degree);
    let size = m + n;
    let mut syl = RationalMatrix::zeros(size, size);
    for row in 0..n {
        for (k, c) in f.coeffs.iter().enumerate() {
            syl.set(row, row + k, c.clone());
        }
    }
    for row in 0..m {
        for (k, c) in g.coeffs.iter().enumerate() {
            syl.set(n + row, row + k, c.clone());
        }
    }
    syl.determinant().expect("square")
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut vars = Vec::new();
            let se = self.degree - k;
            if se > 0 {
                vars.push(if se == 1 { "s".to_string() } else { format!("s^{se}") });
            }
            if k > 0 {
                vars.push(if k == 1 { "t".to_string() } else { format!("t^{k}") });
            }
            if vars.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm[{}]({})", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s() -> BinaryForm {
        BinaryForm::from_i64(&[1, 0])
    }
    fn t() -> BinaryForm {
        BinaryForm::from_i64(&[0, 1])
    }
    fn s_minus_t() -> BinaryForm {
        BinaryForm::from_i64(&[1, -1])
    }

    /// Product of linear factors `(q·s - p·t)` for roots `s/t = p/q`.
    fn from_roots(roots: &[(i64, i64)]) -> BinaryForm {
        roots
            .iter()
            .fold(BinaryForm::from_i64(&[1]), |acc, &(p, q)| acc.mul(&BinaryForm::from_i64(&[q, -p])))
    }

    /// Brute-force root multiplicities over small integer ratios, by repeated
    /// exact division.
    fn brute_root_multiset(f: &BinaryForm) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let mut cur = f.clone();
        for p in -6i64..=6 {
            for q in 0i64..=6 {
                if (p == 0 && q == 0) || num_integer::gcd(p, q) != 1 || (q == 0 && p != 1) {
                    continue;
                }
                let lin = BinaryForm::from_i64(&[q, -p]);
                while let Some(next) = cur.div_exact(&lin) {
                    if next.degree() + 1 != cur.degree() {
                        break;
                    }
                    out.push((p, q));
                    cur = next;
                    if cur.degree() == 0 {
                        break;
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn zeros_are_ignored() {
        let st = s().mul(&t());
        let g = binary_gcd(&[st.clone(), BinaryForm::zero(2), BinaryForm::zero(2)]).unwrap();
        assert_eq!(g, st);
        assert_eq!(g.to_string(), "s*t");
    }

    #[test]
    fn shared_factor_oracle() {
        let a = s_minus_t().mul(&s_minus_t()).mul(&s());
        let b = s_minus_t().mul(&s()).mul(&s());
        // Oracle: intersect brute-force root multisets.
        let ra = brute_root_multiset(&a);
        let rb = brute_root_multiset(&b);
        let mut common = Vec::new();
        let mut rb_left = rb.clone();
        for r in ra {
            if let Some(pos) = rb_left.iter().position(|&x| x == r) {
                rb_left.remove(pos);
                common.push(r);
            }
        }
        let expected = from_roots(&common);
        let g = binary_gcd(&[a, b]).unwrap();
        assert_eq!(g, expected);
        assert_eq!(g, s_minus_t().mul(&s()));
        assert_eq!(g.degree(), 2);
    }

    #[test]
    fn coprime_squares() {
        let g = binary_gcd(&[s().mul(&s()), t().mul(&t())]).unwrap();
        assert_eq!(g.degree(), 0);
        assert_eq!(g, BinaryForm::from_i64(&[1]));
    }

    #[test]
    fn all_zero_and_empty() {
        assert!(binary_gcd(&[BinaryForm::zero(3)]).unwrap().is_zero());
        assert_eq!(binary_gcd(&[]), Err(ExactError::EmptyInput));
    }

    #[test]
    fn t_powers_are_tracked() {
        let a = t().mul(&t()).mul(&s_minus_t());
        let b = t().mul(&s_minus_t()).mul(&s());
        let g = binary_gcd(&[a, b]).unwrap();
        assert_eq!(g, t().mul(&s_minus_t()));
    }

    #[test]
    fn rational_roots_found() {
        let f = from_roots(&[(2, 3), (-1, 1)]).mul(&t()).mul(&BinaryForm::from_i64(&[1, 0, 2]));
        let roots = f.rational_roots().unwrap();
        assert_eq!(roots.len(), 3);
        for (s, t) in &roots {
            assert!(f.eval(s, t).is_zero());
        }
        assert!(roots.contains(&(int(1), int(0))));
        assert!(roots.contains(&(int(2), int(3))));
        assert!(roots.contains(&(int(1), int(-1))));
    }

    #[test]
    fn resultant_examples() {
        assert!(resultant(&s().mul(&t()), &s_minus_t().mul(&s())).is_zero());
        assert_eq!(resultant(&s(), &t()), int(1));
        assert!(!resultant(&s().mul(&s()), &t().mul(&t())).is_zero());
    }

    fn form_strategy() -> impl Strategy<Value = BinaryForm> {
        proptest::collection::vec(-3i64..=3, 1..5).prop_map(|c| BinaryForm::from_i64(&c))
    }

    proptest! {
        #[test]
        fn gcd_degree_is_scale_invariant(fs in proptest::collection::vec(form_strategy(), 1..4), k in 1i64..7) {
            let g = binary_gcd(&fs).unwrap();
            let scaled: Vec<BinaryForm> = fs.iter().map(|f| f.scale(&Rational::new(k.into(), 3.into()))).collect();
            let h = binary_gcd(&scaled).unwrap();
            prop_assert_eq!(g.degree(), h.degree());
            prop_assert_eq!(g, h);
        }

        #[test]
        fn gcd_divides_and_cofactors_coprime(fs in proptest::collection::vec(form_strategy(), 1..4), common in form_strategy()) {
            let fs: Vec<BinaryForm> = fs.iter().map(|f| f.mul(&common)).collect();
            let g = binary_gcd(&fs).unwrap();
            prop_assert!(verify_gcd(&fs, &g));
            if fs.iter().any(|f| !f.is_zero()) {
                prop_assert!(g.degree() >= common.degree() || common.is_zero());
            }
        }

        #[test]
        fn resultant_vanishes_iff_common_root(a in form_strategy(), b in form_strategy()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = binary_gcd(&[a.clone(), b.clone()]).unwrap();
            prop_assert_eq!(resultant(&a, &b).is_zero(), g.degree() > 0);
        }

        #[test]
        fn swapping_variables_preserves_gcd_degree(fs in proptest::collection::vec(form_strategy(), 1..4)) {
            let g = binary_gcd(&fs).unwrap();
            let swapped: Vec<BinaryForm> = fs.iter().map(BinaryForm::swap_variables).collect();
            prop_assert_eq!(binary_gcd(&swapped).unwrap().degree(), g.degree());
        }
    }
}
