//! Explicit first-order line congruences in `Pⁿ` and exact checks on them.
//!
//! Two constructions are supported:
//!
//! * linear congruences, cut on `G(1,n)` by `n-1` Plücker hyperplanes, each
//!   given by a skew-symmetric `(n+1)×(n+1)` matrix `Aᵢ`. The line through a
//!   point `P` is `{v : ᵗP·Aᵢ·v = 0 for all i}`.
//! * determinantal congruences, given by an `n×(n-1)` matrix `A` of linear
//!   forms. The line through `P` is cut by the `n-1` forms `Σᵢ λᵢ a_ij`,
//!   where `λ` spans the left kernel of `A(P)`.
//!
//! Focal points on a line are read off from the gcd of the maximal minors of
//! the defining matrix restricted to the line.

use std::fmt;
use std::path::Path;

use num_traits::Zero;

use crate::exact::{
    binary_gcd, derive_seed, determinant, int, normalize_point, parse_rational, pfaffian, rank_and_kernel,
    seeded_random_matrix, seeded_random_point, BinaryForm, ExactError, MultiPoly, PolyMatrix, Rational,
    RationalMatrix, DEFAULT_BOUND,
};

/// Redraws allowed before a random construction gives up.
pub const MAX_ATTEMPTS: u64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CongruenceError {
    #[error("ambient dimension must be at least 3, got {0}")]
    AmbientTooSmall(usize),
    #[error("no generic draw found after {0} attempts")]
    GenericityExhausted(u64),
    #[error("point has {got} coordinates, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("point is zero")]
    ZeroPoint,
    #[error("kernel has dimension {0} > 2: the point is focal")]
    KernelTooBig(usize),
    #[error("λ-system has solution space of dimension {0}, expected 1")]
    SolutionSpace(usize),
    #[error("the n-1 forms have rank {rank}, expected {expected}")]
    FormsRankDeficient { rank: usize, expected: usize },
    #[error("membership residual is nonzero")]
    MembershipFailed,
    #[error("points are proportional; they do not span a line")]
    DegenerateLine,
    #[error("Pfaffian needs odd n; for n = {0} the skew combination is singular")]
    EvenDimension(usize),
    #[error("matrix {index} is malformed: {reason}")]
    BadMatrix { index: usize, reason: String },
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn check_point(p: &[Rational], n: usize) -> Result<(), CongruenceError> {
    if p.len() != n + 1 {
        return Err(CongruenceError::WrongLength {
            expected: n + 1,
            got: p.len(),
        });
    }
    if p.iter().all(Zero::is_zero) {
        return Err(CongruenceError::ZeroPoint);
    }
    Ok(())
}

/// `(1, 2, …, n+1)`: the probe at which random draws are certified.
pub fn fixed_probe(n: usize) -> Vec<Rational> {
    (1..=n as i64 + 1).map(int).collect()
}

fn probe_sequence(n: usize) -> impl Iterator<Item = Vec<Rational>> {
    std::iter::once(fixed_probe(n))
        .chain((0..MAX_ATTEMPTS - 1).map(move |i| seeded_random_point(derive_seed(0, i), n + 1, DEFAULT_BOUND)))
}

/// Random nonzero probe point for trial `index` of a run seeded with `seed`.
pub fn probe_point(n: usize, seed: u64, index: u64) -> Vec<Rational> {
    seeded_random_point(derive_seed(seed, index), n + 1, DEFAULT_BOUND)
}

fn is_proportional(a: &[Rational], b: &[Rational]) -> bool {
    RationalMatrix::from_rows(vec![a.to_vec(), b.to_vec()])
        .expect("equal lengths")
        .rank()
        < 2
}

fn axpy(a: &Rational, x: &[Rational], b: &Rational, y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

/// A line of `Pⁿ` spanned by two normalized points; parametrized as
/// `P(s,t) = s·p0 + t·p1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjLine {
    p0: Vec<Rational>,
    p1: Vec<Rational>,
}

impl ProjLine {
    pub fn new(p0: &[Rational], p1: &[Rational]) -> Result<Self, CongruenceError> {
        if p0.len() != p1.len() {
            return Err(CongruenceError::WrongLength {
                expected: p0.len(),
                got: p1.len(),
            });
        }
        if is_proportional(p0, p1) {
            return Err(CongruenceError::DegenerateLine);
        }
        Ok(Self {
            p0: normalize_point(p0),
            p1: normalize_point(p1),
        })
    }

    pub fn p0(&self) -> &[Rational] {
        &self.p0
    }

    pub fn p1(&self) -> &[Rational] {
        &self.p1
    }

    pub fn point(&self, s: &Rational, t: &Rational) -> Vec<Rational> {
        axpy(s, &self.p0, t, &self.p1)
    }

    /// The same line with `p0` and `p1` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p0: self.p1.clone(),
            p1: self.p0.clone(),
        }
    }

    /// Normalized Plücker coordinates `p0ᵢp1ⱼ - p0ⱼp1ᵢ`, `i < j`, in lexicographic order.
    pub fn plucker(&self) -> Vec<Rational> {
        let m = self.p0.len();
        let raw: Vec<Rational> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .map(|(i, j)| &self.p0[i] * &self.p1[j] - &self.p0[j] * &self.p1[i])
            .collect();
        normalize_point(&raw)
    }

    pub fn same_line(&self, other: &Self) -> bool {
        self.plucker() == other.plucker()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.p0.len()
            && RationalMatrix::from_rows(vec![self.p0.clone(), self.p1.clone(), p.to_vec()])
                .expect("equal lengths")
                .rank()
                == 2
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &[Rational]| p.iter().map(crate::exact::format_rational).collect::<Vec<_>>().join(":");
        write!(f, "<({}), ({})>", show(&self.p0), show(&self.p1))
    }
}

/// `n-1` skew-symmetric `(n+1)×(n+1)` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCongruence {
    n: usize,
    matrices: Vec<RationalMatrix>,
    certificate: Vec<Rational>,
}

impl LinearCongruence {
    /// Validates shapes and skew-symmetry, then certifies genericity at the
    /// first of a fixed sequence of probe points where a unique line exists.
    pub fn new(n: usize, matrices: Vec<RationalMatrix>) -> Result<Self, CongruenceError> {
        if n < 3 {
            return Err(CongruenceError::AmbientTooSmall(n));
        }
        if matrices.len() != n - 1 {
            return Err(CongruenceError::BadMatrix {
                index: matrices.len(),
                reason: format!("expected {} matrices", n - 1),
            });
        }
        for (index, m) in matrices.iter().enumerate() {
            if m.rows() != n + 1 || m.cols() != n + 1 {
                return Err(CongruenceError::BadMatrix {
                    index,
                    reason: format!("shape {}x{}, expected {}x{}", m.rows(), m.cols(), n + 1, n + 1),
                });
            }
            if !m.is_skew_symmetric() {
                return Err(CongruenceError::BadMatrix {
                    index,
                    reason: "not skew-symmetric".into(),
                });
            }
        }
        let mut c = Self {
            n,
            matrices,
            certificate: Vec::new(),
        };
        for p in probe_sequence(n) {
            if line_through_point_linear(&c, &p).is_ok() {
                c.certificate = p;
                return Ok(c);
            }
        }
        Err(CongruenceError::GenericityExhausted(MAX_ATTEMPTS))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[RationalMatrix] {
        &self.matrices
    }

    /// Probe point at which a unique line was found.
    pub fn certificate(&self) -> &[Rational] {
        &self.certificate
    }

    /// `(n+1)×(n-1)` matrix with columns `Aᵢ·P`.
    pub fn columns_at(&self, p: &[Rational]) -> RationalMatrix {
        let cols: Vec<Vec<Rational>> = self.matrices.iter().map(|a| a.mul_vec(p)).collect();
        RationalMatrix::from_rows(cols).expect("uniform").transpose()
    }

    /// `Σ λᵢ Aᵢ` at a rational `λ`.
    pub fn combination(&self, lambda: &[Rational]) -> RationalMatrix {
        assert_eq!(lambda.len(), self.n - 1);
        self.matrices
            .iter()
            .zip(lambda)
            .fold(RationalMatrix::zeros(self.n + 1, self.n + 1), |acc, (a, l)| acc.add(&a.scale(l)))
    }
}

/// `n×(n-1)` matrix of linear forms on `Pⁿ`, stored as coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantalCongruence {
    n: usize,
    forms: Vec<Vec<Vec<Rational>>>,
    certificate: Vec<Rational>,
}

impl DeterminantalCongruence {
    /// `forms[i][j]` holds the `n+1` coefficients of the entry `a_ij`.
    pub fn new(n: usize, forms: Vec<Vec<Vec<Rational>>>) -> Result<Self, CongruenceError> {
        if n < 3 {
            return Err(CongruenceError::AmbientTooSmall(n));
        }
        if forms.len() != n {
            return Err(CongruenceError::BadMatrix {
                index: 0,
                reason: format!("{} rows, expected {n}", forms.len()),
            });
        }
        for (index, row) in forms.iter().enumerate() {
            if row.len() != n - 1 || row.iter().any(|f| f.len() != n + 1) {
                return Err(CongruenceError::BadMatrix {
                    index,
                    reason: format!("row needs {} forms of {} coefficients", n - 1, n + 1),
                });
            }
        }
        let mut c = Self {
            n,
            forms,
            certificate: Vec::new(),
        };
        for p in probe_sequence(n) {
            if line_through_point_determinantal(&c, &p).is_ok() {
                c.certificate = p;
                return Ok(c);
            }
        }
        Err(CongruenceError::GenericityExhausted(MAX_ATTEMPTS))
    }

    /// Rows `(x₀,x₁), (x₁,x₂), (x₂,x₃)` on `P³`; the focal locus is the twisted cubic.
    pub fn twisted_cubic() -> Self {
        let e = |k: usize| -> Vec<Rational> { (0..4).map(|i| if i == k { int(1) } else { int(0) }).collect() };
        let forms = vec![vec![e(0), e(1)], vec![e(1), e(2)], vec![e(2), e(3)]];
        Self::new(3, forms).expect("catalecticant matrix is generic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forms(&self) -> &[Vec<Vec<Rational>>] {
        &self.forms
    }

    pub fn certificate(&self) -> &[Rational] {
        &self.certificate
    }

    /// `A(P)`.
    pub fn eval(&self, p: &[Rational]) -> RationalMatrix {
        let rows = self
            .forms
            .iter()
            .map(|row| row.iter().map(|f| dot(f, p)).collect())
            .collect();
        RationalMatrix::from_rows(rows).expect("uniform")
    }

    /// Coefficients of `Σᵢ λᵢ a_ij` for each column `j`.
    pub fn combined_forms(&self, lambda: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.n - 1)
            .map(|j| {
                (0..=self.n)
                    .map(|k| {
                        lambda
                            .iter()
                            .zip(&self.forms)
                            .fold(Rational::zero(), |acc, (l, row)| acc + l * &row[j][k])
                    })
                    .collect()
            })
            .collect()
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Linear,
    Determinantal,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Linear => "linear",
            Kind::Determinantal => "determinantal",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "linear" => Ok(Kind::Linear),
            "determinantal" => Ok(Kind::Determinantal),
            other => Err(format!("unknown kind `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Congruence {
    Linear(LinearCongruence),
    Determinantal(DeterminantalCongruence),
}

impl From<LinearCongruence> for Congruence {
    fn from(c: LinearCongruence) -> Self {
        Congruence::Linear(c)
    }
}

impl From<DeterminantalCongruence> for Congruence {
    fn from(c: DeterminantalCongruence) -> Self {
        Congruence::Determinantal(c)
    }
}

pub fn random_linear_congruence(n: usize, seed: u64, bound: i64) -> Result<LinearCongruence, CongruenceError> {
    if n < 3 {
        return Err(CongruenceError::AmbientTooSmall(n));
    }
    let probe = fixed_probe(n);
    for attempt in 0..MAX_ATTEMPTS {
        let s = derive_seed(seed, attempt);
        let matrices = (0..n as u64 - 1)
            .map(|i| seeded_random_matrix(derive_seed(s, i), n + 1, n + 1, bound, true))
            .collect::<Result<Vec<_>, _>>()?;
        let c = LinearCongruence {
            n,
            matrices,
            certificate: probe.clone(),
        };
        if line_through_point_linear(&c, &probe).is_ok() {
            return Ok(c);
        }
    }
    Err(CongruenceError::GenericityExhausted(MAX_ATTEMPTS))
}

pub fn random_determinantal_congruence(
    n: usize,
    seed: u64,
    bound: i64,
) -> Result<DeterminantalCongruence, CongruenceError> {
    if n < 3 {
        return Err(CongruenceError::AmbientTooSmall(n));
    }
    let probe = fixed_probe(n);
    for attempt in 0..MAX_ATTEMPTS {
        let m = seeded_random_matrix(derive_seed(seed, attempt), n * (n - 1), n + 1, bound, false)?;
        let forms = (0..n)
            .map(|i| (0..n - 1).map(|j| m.row(i * (n - 1) + j).to_vec()).collect())
            .collect();
        let c = DeterminantalCongruence {
            n,
            forms,
            certificate: probe.clone(),
        };
        if line_through_point_determinantal(&c, &probe).is_ok() {
            return Ok(c);
        }
    }
    Err(CongruenceError::GenericityExhausted(MAX_ATTEMPTS))
}

/// `ᵗp₀·Aᵢ·p₁` for each `i`; all zero iff the line lies on every hyperplane section.
pub fn linear_membership_residuals(c: &LinearCongruence, line: &ProjLine) -> Vec<Rational> {
    c.matrices.iter().map(|a| a.bilinear(&line.p0, &line.p1)).collect()
}

pub fn line_through_point_linear(c: &LinearCongruence, p: &[Rational]) -> Result<ProjLine, CongruenceError> {
    check_point(p, c.n)?;
    let rows: Vec<Vec<Rational>> = c.matrices.iter().map(|a| a.vec_mul(p)).collect();
    let (_, kernel) = rank_and_kernel(&RationalMatrix::from_rows(rows)?);
    if kernel.len() != 2 {
        return Err(CongruenceError::KernelTooBig(kernel.len()));
    }
    let line = ProjLine::new(&kernel[0], &kernel[1])?;
    if !line.contains(p) || linear_membership_residuals(c, &line).iter().any(|r| !r.is_zero()) {
        return Err(CongruenceError::MembershipFailed);
    }
    Ok(line)
}

/// A determinantal line together with the row combination that cuts it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantalLine {
    pub line: ProjLine,
    pub lambda: Vec<Rational>,
}

pub fn line_through_point_determinantal(
    c: &DeterminantalCongruence,
    p: &[Rational],
) -> Result<DeterminantalLine, CongruenceError> {
    check_point(p, c.n)?;
    let (_, left) = rank_and_kernel(&c.eval(p).transpose());
    if left.len() != 1 {
        return Err(CongruenceError::SolutionSpace(left.len()));
    }
    let lambda = left.into_iter().next().expect("one vector");
    let forms = RationalMatrix::from_rows(c.combined_forms(&lambda))?;
    let (rank, kernel) = rank_and_kernel(&forms);
    if rank != c.n - 1 {
        return Err(CongruenceError::FormsRankDeficient {
            rank,
            expected: c.n - 1,
        });
    }
    let line = ProjLine::new(&kernel[0], &kernel[1])?;
    if !line.contains(p) {
        return Err(CongruenceError::MembershipFailed);
    }
    Ok(DeterminantalLine { line, lambda })
}

/// `Σᵢ λᵢ a_ij` restricted to the line, one linear binary form per column.
pub fn row_combination_on_line(c: &DeterminantalCongruence, lambda: &[Rational], line: &ProjLine) -> Vec<BinaryForm> {
    c.combined_forms(lambda)
        .iter()
        .map(|f| BinaryForm::linear(dot(f, &line.p0), dot(f, &line.p1)))
        .collect()
}

impl Congruence {
    pub fn n(&self) -> usize {
        match self {
            Congruence::Linear(c) => c.n,
            Congruence::Determinantal(c) => c.n,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Congruence::Linear(_) => Kind::Linear,
            Congruence::Determinantal(_) => Kind::Determinantal,
        }
    }

    pub fn line_through_point(&self, p: &[Rational]) -> Result<ProjLine, CongruenceError> {
        match self {
            Congruence::Linear(c) => line_through_point_linear(c, p),
            Congruence::Determinantal(c) => line_through_point_determinantal(c, p).map(|l| l.line),
        }
    }

    /// Defining matrix with entries restricted to `P(s,t)` as linear forms
    /// `(coefficient of s, coefficient of t)`.
    fn restricted(&self, line: &ProjLine) -> Vec<Vec<(Rational, Rational)>> {
        match self {
            Congruence::Linear(c) => {
                let a0 = c.columns_at(&line.p0);
                let a1 = c.columns_at(&line.p1);
                (0..a0.rows())
                    .map(|r| (0..a0.cols()).map(|k| (a0.get(r, k).clone(), a1.get(r, k).clone())).collect())
                    .collect()
            }
            Congruence::Determinantal(c) => {
                let a0 = c.eval(&line.p0);
                let a1 = c.eval(&line.p1);
                (0..a0.rows())
                    .map(|r| (0..a0.cols()).map(|k| (a0.get(r, k).clone(), a1.get(r, k).clone())).collect())
                    .collect()
            }
        }
    }

    /// Matrix whose rank drop defines the focal locus: columns `Aᵢ·P`, or `A(P)`.
    pub fn focal_matrix(&self, p: &[Rational]) -> RationalMatrix {
        match self {
            Congruence::Linear(c) => c.columns_at(p),
            Congruence::Determinantal(c) => c.eval(p),
        }
    }
}

/// Outcome of restricting the maximal minors to one line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FocalSliceReport {
    /// Degree of each restricted minor in lexicographic row-subset order;
    /// `None` for a minor that vanishes identically.
    pub minor_degrees: Vec<Option<usize>>,
    pub minors: Vec<BinaryForm>,
    pub gcd_form: BinaryForm,
    pub gcd_degree: usize,
    pub focal_line_flag: bool,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn to_binary_form(p: &MultiPoly, degree: usize) -> BinaryForm {
    let coeffs = (0..=degree)
        .map(|k| p.coefficient(&[(degree - k) as u32, k as u32]))
        .collect();
    BinaryForm::new(coeffs)
}

pub fn focal_points_on_line(c: &Congruence, line: &ProjLine) -> Result<FocalSliceReport, CongruenceError> {
    let entries = c.restricted(line);
    let k = c.n() - 1;
    let (s, t) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
    let poly_rows: Vec<Vec<MultiPoly>> = entries
        .iter()
        .map(|row| row.iter().map(|(a, b)| &s.scale(a) + &t.scale(b)).collect())
        .collect();
    let full = PolyMatrix::from_rows(2, poly_rows)?;
    let cols: Vec<usize> = (0..k).collect();
    let minors: Vec<BinaryForm> = subsets(full.rows(), k)
        .iter()
        .map(|rows| determinant(&full.submatrix(rows, &cols)).map(|d| to_binary_form(&d, k)))
        .collect::<Result<_, _>>()?;
    let minor_degrees = minors.iter().map(|m| (!m.is_zero()).then_some(k)).collect();
    let gcd_form = binary_gcd(&minors)?;
    let focal_line_flag = minors.iter().all(BinaryForm::is_zero);
    let gcd_degree = if focal_line_flag { 0 } else { gcd_form.degree() };
    Ok(FocalSliceReport {
        minor_degrees,
        minors,
        gcd_form,
        gcd_degree,
        focal_line_flag,
    })
}

/// Rank of the focal matrix at `P` is at most `n-2`.
pub fn is_focal_point(c: &Congruence, p: &[Rational]) -> Result<bool, CongruenceError> {
    check_point(p, c.n())?;
    Ok(c.focal_matrix(p).rank() + 2 <= c.n())
}

/// `Pf(Σ λᵢAᵢ)` in `λ₁..λ_{n-1}`, homogeneous of degree `(n+1)/2`.
pub fn pfaffian_polynomial(c: &LinearCongruence) -> Result<MultiPoly, CongruenceError> {
    if c.n % 2 == 0 {
        return Err(CongruenceError::EvenDimension(c.n));
    }
    let pf = pfaffian(&PolyMatrix::linear_combination(&c.matrices))?;
    let expected = (c.n as u32).div_ceil(2);
    assert!(
        pf.is_zero() || pf.homogeneous_degree() == Some(expected),
        "Pfaffian is not homogeneous of degree {expected}"
    );
    Ok(pf)
}

/// `det(Σ λᵢAᵢ)` as a polynomial in `λ`; identically zero when `n` is even.
pub fn skew_determinant(c: &LinearCongruence) -> Result<MultiPoly, CongruenceError> {
    Ok(determinant(&PolyMatrix::linear_combination(&c.matrices))?)
}

/// Point in the kernel of `Σ λᵢAᵢ`, which is focal by construction. Exists
/// for every `λ` when `n` is even.
pub fn linear_focal_witness(c: &LinearCongruence, lambda: &[Rational]) -> Option<Vec<Rational>> {
    rank_and_kernel(&c.combination(lambda)).1.into_iter().next()
}

/// Point `x` with `A(x)·y = 0` for the column vector `y`, so `A(x)` drops rank.
pub fn determinantal_focal_witness(c: &DeterminantalCongruence, y: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(y.len(), c.n - 1);
    let rows = (0..c.n)
        .map(|i| {
            (0..=c.n)
                .map(|k| y.iter().zip(&c.forms[i]).fold(Rational::zero(), |acc, (yj, f)| acc + yj * &f[k]))
                .collect()
        })
        .collect();
    let m = RationalMatrix::from_rows(rows).ok()?;
    rank_and_kernel(&m).1.into_iter().next()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeFailure {
    pub index: u64,
    pub point: Vec<Rational>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub trials: u64,
    pub lines: u64,
    pub focal_probes: u64,
    /// Probes whose line was recovered again from a second point on it.
    pub requery_agreements: u64,
    pub failures: Vec<ProbeFailure>,
}

impl OrderReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.lines + self.focal_probes == self.trials && self.requery_agreements == self.lines
    }
}

/// A point of `line` different from `p` and not focal.
fn second_point(c: &Congruence, line: &ProjLine, p: &[Rational]) -> Option<Vec<Rational>> {
    (1..=16i64)
        .flat_map(|k| [(int(1), int(k)), (int(k), int(-1))])
        .map(|(s, t)| line.point(&s, &t))
        .find(|q| !is_proportional(q, p) && !is_focal_point(c, q).unwrap_or(true))
}

/// Queries `trials` derived random points; every non-focal probe must give
/// exactly one line, and that line must be returned again from a second
/// point on it.
pub fn order_check(c: &Congruence, trials: u64, seed: u64) -> Result<OrderReport, CongruenceError> {
    if trials == 0 {
        return Err(CongruenceError::ZeroTrials);
    }
    let mut report = OrderReport {
        trials,
        lines: 0,
        focal_probes: 0,
        requery_agreements: 0,
        failures: Vec::new(),
    };
    for index in 0..trials {
        let p = probe_point(c.n(), seed, index);
        if is_focal_point(c, &p)? {
            report.focal_probes += 1;
            continue;
        }
        let fail = |reason: String| ProbeFailure {
            index,
            point: p.clone(),
            reason,
        };
        match c.line_through_point(&p) {
            Ok(line) => {
                report.lines += 1;
                match second_point(c, &line, &p).map(|q| c.line_through_point(&q)) {
                    Some(Ok(other)) if other.same_line(&line) => report.requery_agreements += 1,
                    Some(Ok(other)) => report.failures.push(fail(format!("second point gives another line {other}"))),
                    Some(Err(e)) => report.failures.push(fail(format!("second point: {e}"))),
                    None => report.failures.push(fail("no usable second point".into())),
                }
            }
            Err(e) => report.failures.push(fail(e.to_string())),
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FocalProbe {
    pub index: u64,
    pub line: ProjLine,
    pub gcd_degree: usize,
    pub focal_line: bool,
    /// Rational roots of the gcd, each checked with [`is_focal_point`].
    pub rational_foci: Vec<Vec<Rational>>,
    pub foci_confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FocalCheckReport {
    pub n: usize,
    pub probes: Vec<FocalProbe>,
    pub failures: Vec<ProbeFailure>,
}

impl FocalCheckReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
            && self
                .probes
                .iter()
                .all(|p| p.gcd_degree == self.n - 1 && !p.focal_line && p.foci_confirmed)
    }
}

/// Gcd degree of the restricted minors on the line through each probe point.
pub fn focal_check(c: &Congruence, trials: u64, seed: u64) -> Result<FocalCheckReport, CongruenceError> {
    if trials == 0 {
        return Err(CongruenceError::ZeroTrials);
    }
    let mut report = FocalCheckReport {
        n: c.n(),
        probes: Vec::new(),
        failures: Vec::new(),
    };
    for index in 0..trials {
        let p = probe_point(c.n(), seed, index);
        if is_focal_point(c, &p)? {
            continue;
        }
        let line = match c.line_through_point(&p) {
            Ok(l) => l,
            Err(e) => {
                report.failures.push(ProbeFailure {
                    index,
                    point: p,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        let slice = focal_points_on_line(c, &line)?;
        let roots = match slice.gcd_form.rational_roots() {
            Ok(r) if !slice.focal_line_flag => r,
            _ => Vec::new(),
        };
        let rational_foci: Vec<Vec<Rational>> = roots.iter().map(|(s, t)| normalize_point(&line.point(s, t))).collect();
        let foci_confirmed = rational_foci.iter().all(|q| is_focal_point(c, q).unwrap_or(false));
        report.probes.push(FocalProbe {
            index,
            line,
            gcd_degree: slice.gcd_degree,
            focal_line: slice.focal_line_flag,
            rational_foci,
            foci_confirmed,
        });
    }
    Ok(report)
}

// Plain-text serialization:
//
//   n 5
//   kind linear
//   <n-1 blocks of n+1 rows, blocks separated by blank lines>
//
// Determinantal rows list the n-1 forms of one matrix row, each as n+1
// coefficients, separated by `|`. `#` starts a comment.

pub fn to_text(c: &Congruence) -> String {
    let fmt_row = |r: &[Rational]| r.iter().map(crate::exact::format_rational).collect::<Vec<_>>().join(" ");
    let mut out = format!("n {}\nkind {}\n", c.n(), c.kind().as_str());
    match c {
        Congruence::Linear(l) => {
            for (i, m) in l.matrices.iter().enumerate() {
                out.push_str(&format!("\n# A{}\n", i + 1));
                for r in 0..m.rows() {
                    out.push_str(&fmt_row(m.row(r)));
                    out.push('\n');
                }
            }
        }
        Congruence::Determinantal(d) => {
            out.push('\n');
            for row in &d.forms {
                let parts: Vec<String> = row.iter().map(|f| fmt_row(f)).collect();
                out.push_str(&parts.join(" | "));
                out.push('\n');
            }
        }
    }
    out
}

fn parse_numbers(line: usize, text: &str) -> Result<Vec<Rational>, CongruenceError> {
    text.split_whitespace()
        .map(|tok| {
            parse_rational(tok).ok_or_else(|| CongruenceError::Parse {
                line,
                message: format!("bad number `{tok}`"),
            })
        })
        .collect()
}

fn header_value<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<(usize, &'a str), CongruenceError> {
    let (no, l) = lines.next().ok_or(CongruenceError::Parse {
        line: 0,
        message: format!("missing `{key}` header"),
    })?;
    match l.split_once(char::is_whitespace) {
        Some((k, v)) if k == key => Ok((no, v.trim())),
        _ => Err(CongruenceError::Parse {
            line: no,
            message: format!("expected `{key} <value>`"),
        }),
    }
}

pub fn from_text(text: &str) -> Result<Congruence, CongruenceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (no, n) = header_value(&mut lines, "n")?;
    let n: usize = n.parse().map_err(|_| CongruenceError::Parse {
        line: no,
        message: format!("bad dimension `{n}`"),
    })?;
    if n < 3 {
        return Err(CongruenceError::AmbientTooSmall(n));
    }
    let (no, kind) = header_value(&mut lines, "kind")?;
    let kind: Kind = kind.parse().map_err(|message| CongruenceError::Parse { line: no, message })?;
    let rows: Vec<(usize, &str)> = lines.collect();
    let last = rows.last().map_or(no, |r| r.0);
    match kind {
        Kind::Linear => {
            if rows.len() != (n - 1) * (n + 1) {
                return Err(CongruenceError::Parse {
                    line: last,
                    message: format!("expected {} matrix rows, found {}", (n - 1) * (n + 1), rows.len()),
                });
            }
            let mut matrices = Vec::with_capacity(n - 1);
            for block in rows.chunks(n + 1) {
                let mut m = Vec::with_capacity(n + 1);
                for &(line, text) in block {
                    let r = parse_numbers(line, text)?;
                    if r.len() != n + 1 {
                        return Err(CongruenceError::Parse {
                            line,
                            message: format!("expected {} entries, found {}", n + 1, r.len()),
                        });
                    }
                    m.push(r);
                }
                matrices.push(RationalMatrix::from_rows(m)?);
            }
            Ok(LinearCongruence::new(n, matrices)?.into())
        }
        Kind::Determinantal => {
            if rows.len() != n {
                return Err(CongruenceError::Parse {
                    line: last,
                    message: format!("expected {n} matrix rows, found {}", rows.len()),
                });
            }
            let mut forms = Vec::with_capacity(n);
            for &(line, text) in &rows {
                let row = text
                    .split('|')
                    .map(|part| {
                        let f = parse_numbers(line, part)?;
                        if f.len() != n + 1 {
                            return Err(CongruenceError::Parse {
                                line,
                                message: format!("each form needs {} coefficients", n + 1),
                            });
                        }
                        Ok(f)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if row.len() != n - 1 {
                    return Err(CongruenceError::Parse {
                        line,
                        message: format!("expected {} forms, found {}", n - 1, row.len()),
                    });
                }
                forms.push(row);
            }
            Ok(DeterminantalCongruence::new(n, forms)?.into())
        }
    }
}

pub fn save(c: &Congruence, path: &Path) -> Result<(), CongruenceError> {
    std::fs::write(path, to_text(c)).map_err(|e| CongruenceError::Io(e.to_string()))
}

pub fn load(path: &Path) -> Result<Congruence, CongruenceError> {
    let text = std::fs::read_to_string(path).map_err(|e| CongruenceError::Io(e.to_string()))?;
    from_text(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn shapes_of_random_constructions() {
        let c = random_linear_congruence(5, 42, 9).unwrap();
        assert_eq!(c.matrices().len(), 4);
        assert!(c.matrices().iter().all(|m| m.rows() == 6 && m.is_skew_symmetric()));
        assert_eq!(random_linear_congruence(4, 7, 9).unwrap().matrices().len(), 3);
        let d = random_determinantal_congruence(4, 3, 9).unwrap();
        assert_eq!(d.forms().len(), 4);
        assert!(d.forms().iter().all(|r| r.len() == 3 && r.iter().all(|f| f.len() == 5)));
        assert!(random_linear_congruence(2, 1, 9).is_err());
    }

    #[test]
    fn twisted_cubic_line_and_minors() {
        let c = DeterminantalCongruence::twisted_cubic();
        let got = line_through_point_determinantal(&c, &pt(&[1, 0, 0, 1])).unwrap();
        assert_eq!(got.lambda, pt(&[0, 1, 0]));
        let expected = ProjLine::new(&pt(&[1, 0, 0, 0]), &pt(&[0, 0, 0, 1])).unwrap();
        assert!(got.line.same_line(&expected));
        let report = focal_points_on_line(&c.clone().into(), &expected).unwrap();
        let st = BinaryForm::from_i64(&[0, 1, 0]);
        assert_eq!(report.minors, vec![BinaryForm::zero(2), st.clone(), BinaryForm::zero(2)]);
        assert_eq!(report.minor_degrees, vec![None, Some(2), None]);
        assert_eq!(report.gcd_form, st);
        assert_eq!(report.gcd_degree, 2);
        assert!(!report.focal_line_flag);
    }

    #[test]
    fn twisted_cubic_focal_points() {
        let c: Congruence = DeterminantalCongruence::twisted_cubic().into();
        assert!(is_focal_point(&c, &pt(&[1, 0, 0, 0])).unwrap());
        assert!(!is_focal_point(&c, &pt(&[1, 0, 0, 1])).unwrap());
        // Points (1, u, u², u³) of the cubic.
        assert!(is_focal_point(&c, &pt(&[1, 2, 4, 8])).unwrap());
        assert!(matches!(
            c.line_through_point(&pt(&[1, 2, 4, 8])),
            Err(CongruenceError::SolutionSpace(2))
        ));
    }

    #[test]
    fn linear_line_membership_and_requery() {
        let c = random_linear_congruence(5, 42, 9).unwrap();
        let p = probe_point(5, 99, 0);
        let line = line_through_point_linear(&c, &p).unwrap();
        assert!(line.contains(&p));
        assert!(linear_membership_residuals(&c, &line).iter().all(Zero::is_zero));
        let q = line.point(&int(3), &int(-7));
        assert!(line_through_point_linear(&c, &q).unwrap().same_line(&line));
    }

    #[test]
    fn linear_focal_point_has_big_kernel() {
        let c = random_linear_congruence(4, 11, 9).unwrap();
        let p = linear_focal_witness(&c, &pt(&[2, -1, 3])).unwrap();
        assert!(is_focal_point(&c.clone().into(), &p).unwrap());
        assert!(matches!(line_through_point_linear(&c, &p), Err(CongruenceError::KernelTooBig(k)) if k >= 3));
    }

    #[test]
    fn determinantal_focal_point_is_rejected() {
        let c = random_determinantal_congruence(4, 3, 9).unwrap();
        let p = determinantal_focal_witness(&c, &pt(&[1, -2, 5])).unwrap();
        let cc: Congruence = c.clone().into();
        assert!(is_focal_point(&cc, &p).unwrap());
        assert!(line_through_point_determinantal(&c, &p).is_err());
    }

    #[test]
    fn random_points_are_not_focal() {
        for seed in 1..=20 {
            let c: Congruence = random_linear_congruence(4, seed, 9).unwrap().into();
            assert!(!is_focal_point(&c, &probe_point(4, seed, 0)).unwrap());
            let d: Congruence = random_determinantal_congruence(4, seed, 9).unwrap().into();
            assert!(!is_focal_point(&d, &probe_point(4, seed, 1)).unwrap());
        }
    }

    #[test]
    fn gcd_degree_on_random_lines() {
        for n in 3..=5 {
            let c: Congruence = random_linear_congruence(n, 42, 9).unwrap().into();
            let line = c.line_through_point(&probe_point(n, 5, 0)).unwrap();
            let r = focal_points_on_line(&c, &line).unwrap();
            assert_eq!(r.gcd_degree, n - 1);
            assert_eq!(focal_points_on_line(&c, &line.swapped()).unwrap().gcd_degree, n - 1);
        }
    }

    #[test]
    fn determinantal_rows_combine_to_zero_on_line() {
        let c = random_determinantal_congruence(5, 8, 9).unwrap();
        let got = line_through_point_determinantal(&c, &probe_point(5, 1, 2)).unwrap();
        assert!(row_combination_on_line(&c, &got.lambda, &got.line)
            .iter()
            .all(BinaryForm::is_zero));
    }

    #[test]
    fn pfaffian_degrees() {
        for seed in 1..=3 {
            let c3 = random_linear_congruence(3, seed, 9).unwrap();
            assert_eq!(pfaffian_polynomial(&c3).unwrap().homogeneous_degree(), Some(2));
            let c5 = random_linear_congruence(5, seed, 9).unwrap();
            let pf = pfaffian_polynomial(&c5).unwrap();
            assert_eq!((pf.nvars(), pf.homogeneous_degree()), (4, Some(3)));
        }
        let c4 = random_linear_congruence(4, 1, 9).unwrap();
        assert_eq!(pfaffian_polynomial(&c4), Err(CongruenceError::EvenDimension(4)));
        assert!(skew_determinant(&c4).unwrap().is_zero());
    }

    #[test]
    fn order_check_runs() {
        let c: Congruence = random_determinantal_congruence(4, 2, 9).unwrap().into();
        let r = order_check(&c, 5, 7).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.lines, 5);
        assert_eq!(order_check(&c, 0, 7), Err(CongruenceError::ZeroTrials));
    }

    #[test]
    fn text_round_trip() {
        let c: Congruence = random_linear_congruence(4, 5, 9).unwrap().into();
        assert_eq!(from_text(&to_text(&c)).unwrap(), c);
        let d: Congruence = DeterminantalCongruence::twisted_cubic().into();
        let text = to_text(&d);
        assert!(text.contains("1 0 0 0 | 0 1 0 0"));
        assert_eq!(from_text(&text).unwrap(), d);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = from_text("n 3\nkind determinantal\n1 0 0 0 | 0 1 0\n").unwrap_err();
        assert!(matches!(err, CongruenceError::Parse { .. }));
        let err = from_text("n 3\nkind conic\n").unwrap_err();
        assert_eq!(
            err,
            CongruenceError::Parse {
                line: 2,
                message: "unknown kind `conic`".into()
            }
        );
        let err = from_text("n 3\nkind linear\n0 1 0 0\n").unwrap_err();
        assert!(matches!(err, CongruenceError::Parse { line: 3, .. }));
    }

    #[test]
    fn non_skew_matrix_rejected() {
        let mut m = RationalMatrix::zeros(4, 4);
        m.set(0, 1, int(1));
        let ok = seeded_random_matrix(1, 4, 4, 9, true).unwrap();
        assert!(matches!(
            LinearCongruence::new(3, vec![m, ok]),
            Err(CongruenceError::BadMatrix { index: 0, .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn requery_returns_same_line(seed in any::<u64>(), n in 3usize..6, det in any::<bool>()) {
            let c: Congruence = if det {
                random_determinantal_congruence(n, seed, 9).unwrap().into()
            } else {
                random_linear_congruence(n, seed, 9).unwrap().into()
            };
            let p = probe_point(n, seed, 1);
            prop_assume!(!is_focal_point(&c, &p).unwrap());
            let line = c.line_through_point(&p).unwrap();
            prop_assert!(line.contains(&p));
            let q = line.point(&int(1), &int(1));
            if !is_focal_point(&c, &q).unwrap() {
                prop_assert!(c.line_through_point(&q).unwrap().same_line(&line));
            }
        }

        #[test]
        fn plucker_is_basis_independent(a in prop::collection::vec(-5i64..=5, 4), b in prop::collection::vec(-5i64..=5, 4), k in 1i64..5) {
            let (a, b) = (pt(&a), pt(&b));
            prop_assume!(!is_proportional(&a, &b));
            let l1 = ProjLine::new(&a, &b).unwrap();
            let c = axpy(&int(k), &a, &int(-1), &b);
            let l2 = ProjLine::new(&c, &a).unwrap();
            prop_assert!(l1.same_line(&l2));
        }
    }
}
