//! Closed-form enumerative formulas for codimension-two varieties: double,
//! triple and quadruple point formulas, 4-secant counts, the multidegree of
//! the 4-secant congruence of a threefold in `P⁵`, focal-locus invariants of
//! the two congruence constructions, and the degree bound for the focal
//! locus of a first-order congruence.
//!
//! Every formula is evaluated over exact rationals. Integrality is reported,
//! never forced by rounding.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{binomial, int, is_integral, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("degree must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("{what} = {value} is not an integer; invariants are inconsistent")]
    NonIntegral { what: &'static str, value: String },
    #[error("formula assumes the surface is not a scroll")]
    Scroll,
    #[error("ambient dimension {n} below minimum {min}")]
    AmbientTooSmall { n: u32, min: u32 },
    #[error("n = {0} is even: the skew combination is singular for every λ")]
    EvenDimension(u32),
    #[error("bound check needs n ≥ 2, m ≥ 1, k ≥ 1")]
    BadBoundInput,
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Basic invariants of a smooth threefold `X ⊂ P⁵` with general hyperplane
/// section `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreefoldInvariants {
    pub d: i64,
    pub pi: i64,
    pub chi_s: i64,
    pub chi_x: i64,
}

impl ThreefoldInvariants {
    pub fn new(d: i64, pi: i64, chi_s: i64, chi_x: i64) -> Result<Self, FormulaError> {
        if d < 1 {
            return Err(FormulaError::NonPositiveDegree(d));
        }
        Ok(Self { d, pi, chi_s, chi_x })
    }

    /// Invariants `(d, π, χ(O_S))` of the hyperplane section.
    pub fn section(&self) -> SectionInvariants {
        SectionInvariants {
            d: self.d,
            pi: self.pi,
            chi: self.chi_s,
        }
    }

    /// Checks that the derived `K³` and `H·K²` are integers.
    pub fn check_integrality(&self) -> Result<(), FormulaError> {
        for (what, v) in [("K^3", k_cubed(self)), ("H.K^2", h_k_squared(self))] {
            if !is_integral(&v) {
                return Err(FormulaError::NonIntegral {
                    what,
                    value: crate::exact::format_rational(&v),
                });
            }
        }
        Ok(())
    }
}

/// `(d, π, χ(O_S))` of a surface in `P⁴`; all that the 4-secant formulas need.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectionInvariants {
    pub d: i64,
    pub pi: i64,
    pub chi: i64,
}

/// Smooth surface in `P⁴` with its canonical self-intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub d: i64,
    pub pi: i64,
    pub chi: i64,
    pub k2: i64,
    pub scroll: bool,
}

impl SurfaceInvariants {
    pub fn new(d: i64, pi: i64, chi: i64, k2: i64, scroll: bool) -> Result<Self, FormulaError> {
        if d < 1 {
            return Err(FormulaError::NonPositiveDegree(d));
        }
        Ok(Self { d, pi, chi, k2, scroll })
    }

    /// Non-scroll surface whose `K²` is fixed by the double point formula in `P⁴`.
    pub fn from_double_point(d: i64, pi: i64, chi: i64) -> Result<Self, FormulaError> {
        let k2 = surface_double_point_k2(d, pi, chi);
        debug_assert!(is_integral(&k2));
        Self::new(d, pi, chi, k2.to_integer().try_into().expect("small"), false)
    }

    /// `H·K = 2π - 2 - d`.
    pub fn hk(&self) -> i64 {
        2 * self.pi - 2 - self.d
    }

    /// Topological Euler characteristic `c₂ = 12χ - K²`.
    pub fn c2(&self) -> i64 {
        12 * self.chi - self.k2
    }

    pub fn section(&self) -> SectionInvariants {
        SectionInvariants {
            d: self.d,
            pi: self.pi,
            chi: self.chi,
        }
    }
}

/// `K²` forced by `d² - 10d - 5HK - 2K² + 12χ = 0` for a smooth surface of `P⁴`.
pub fn surface_double_point_k2(d: i64, pi: i64, chi: i64) -> Rational {
    let hk = 2 * pi - 2 - d;
    frac(d * d - 10 * d - 5 * hk + 12 * chi, 2)
}

/// `K³ = -5d² + d(2π+25) + 24(π-1) - 36χ_X - 24χ_S`.
///
/// The χ coefficients are as displayed in the source formula. Adjunction on
/// complete intersections in `P⁵` (e.g. type (2,3), where `K = -H`) matches
/// only with `χ_X` and `χ_S` exchanged; the two agree whenever `χ_X = χ_S`.
pub fn k_cubed(t: &ThreefoldInvariants) -> Rational {
    int(-5 * t.d * t.d + t.d * (2 * t.pi + 25) + 24 * (t.pi - 1) - 36 * t.chi_x - 24 * t.chi_s)
}

/// `H·K² = d(d+1)/2 - 9(π-1) + 6χ_X`, with the same χ caveat as [`k_cubed`].
pub fn h_k_squared(t: &ThreefoldInvariants) -> Rational {
    frac(t.d * (t.d + 1), 2) + int(-9 * (t.pi - 1) + 6 * t.chi_x)
}

/// Number of apparent quadruple points `q(X)` of a smooth threefold in `P⁵`:
/// the order of its family of 4-secant lines.
pub fn quadruple_points(t: &ThreefoldInvariants) -> Rational {
    let d = int(t.d);
    let pi = int(t.pi);
    let cs = int(t.chi_s);
    let cx = int(t.chi_x);
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let d4 = &d3 * &d;
    d4 * frac(1, 24) - d3 * frac(1, 4) + d2 * frac(1, 2) * (frac(11, 12) - &pi)
        + &d * (frac(5, 2) * &pi + int(2) * &cs - frac(9, 4))
        + frac(1, 2) * &pi * &pi
        - frac(7, 2) * &pi
        + int(6) * cx
        - int(9) * cs
        + int(3)
}

/// The `χ_X` making `q(X)` equal to `target` (q is affine in `χ_X` with slope 6).
pub fn chi_x_for_quadruple_points(d: i64, pi: i64, chi_s: i64, target: i64) -> Rational {
    let base = quadruple_points(&ThreefoldInvariants { d, pi, chi_s, chi_x: 0 });
    (int(target) - base) / int(6)
}

/// Number `h` of 4-secant lines of a non-scroll surface `S ⊂ P⁴` through a
/// general point of `S`.
pub fn four_secants_through_point(s: &SectionInvariants) -> Rational {
    let d = int(s.d);
    let pi = int(s.pi);
    let d2 = &d * &d;
    &d2 * &d * frac(1, 6) - d2 * frac(3, 2) + &d * (frac(16, 3) - &pi) + int(4) * pi + int(2 * s.chi - 10)
}

/// `a₁`: degree of the hypersurface swept by the 4-secant lines of the
/// hyperplane section.
pub fn foursecant_scroll_degree_a1(s: &SectionInvariants) -> Rational {
    let d = int(s.d);
    let pi = int(s.pi);
    let chi = int(s.chi);
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let d4 = &d3 * &d;
    d4 * frac(1, 8) - d3 * frac(5, 4) + d2 * (frac(35, 8) - &pi)
        + &d * (int(7) * &pi + int(2) * &chi - frac(33, 4))
        + frac(1, 2) * &pi * &pi
        - frac(25, 2) * &pi
        - int(9) * chi
        + int(12)
}

/// `a₂`: number of 4-secant lines of a smooth space curve of degree `d`,
/// genus `π`.
pub fn curve_foursecants_a2(d: i64, pi: i64) -> Rational {
    let d = int(d);
    let pi = int(pi);
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let d4 = &d3 * &d;
    d4 * frac(1, 12) - d3 + &d2 * frac(53, 12) - &d * frac(17, 2) + int(6) - &pi * &d2 * frac(1, 2)
        + &d * &pi * frac(7, 2)
        - &pi * frac(13, 2)
        + &pi * &pi * frac(1, 2)
}

/// Left-hand side of the constraint `4h = 1 + a₁` after substitution; zero
/// exactly when the constraint holds.
pub fn residual_4k(s: &SectionInvariants) -> Rational {
    let d = int(s.d);
    let pi = int(s.pi);
    let chi = int(s.chi);
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let d4 = &d3 * &d;
    d4 * frac(1, 8) - d3 * frac(23, 12) - d2 * (&pi - frac(83, 8))
        - &d * (frac(355, 12) - int(11) * &pi - int(2) * &chi)
        + frac(1, 2) * &pi * &pi
        - frac(57, 2) * &pi
        - int(17) * chi
        + int(53)
}

fn triple_point_formula(d: &Rational, k2: &Rational, c2: &Rational, hk: &Rational) -> Rational {
    let cubic = d * (d * d - int(12) * d + int(44));
    (cubic + int(4) * k2 - int(2) * c2 - int(3) * hk * (d - int(8))) / int(6)
}

/// Apparent triple points of a non-scroll surface in `P⁴` (triple points of
/// a general projection to `P³`).
pub fn apparent_triple_points(s: &SurfaceInvariants) -> Result<Rational, FormulaError> {
    if s.scroll {
        return Err(FormulaError::Scroll);
    }
    Ok(triple_point_formula(&int(s.d), &int(s.k2), &int(s.c2()), &int(s.hk())))
}

/// Triple point formula applied to the blow-up of `S` at a point followed by
/// projection from it: `d̃ = d-1`, `c̃₂ = c₂+1`, `K̃² = K²-1`, `H̃K̃ = 2π-d-1`.
/// Agrees with [`four_secants_through_point`] when `K²` satisfies the
/// surface double point formula.
pub fn blowup_triple_points(s: &SurfaceInvariants) -> Result<Rational, FormulaError> {
    if s.scroll {
        return Err(FormulaError::Scroll);
    }
    Ok(triple_point_formula(
        &int(s.d - 1),
        &int(s.k2 - 1),
        &int(s.c2() + 1),
        &int(2 * s.pi - s.d - 1),
    ))
}

/// Apparent double points of a space curve: nodes of a general plane
/// projection, `(d-1)(d-2)/2 - π`.
pub fn apparent_double_points(d: i64, pi: i64) -> Rational {
    frac((d - 1) * (d - 2), 2) - int(pi)
}

/// Degree `(n² - 3n + 4)/2` of the focal locus of a general linear congruence.
pub fn linear_focal_degree(n: u32) -> Result<BigInt, FormulaError> {
    if n < 3 {
        return Err(FormulaError::AmbientTooSmall { n, min: 3 });
    }
    let n = BigInt::from(n);
    Ok((&n * &n - 3 * &n + 4) / 2)
}

/// Degree `(n+1)/2` of the Pfaffian hypersurface in the `λ`-space `P^(n-2)`.
pub fn pfaffian_hypersurface_degree(n: u32) -> Result<u32, FormulaError> {
    if n % 2 == 0 {
        return Err(FormulaError::EvenDimension(n));
    }
    Ok(n.div_ceil(2))
}

/// `(deg F, π(F)) = (C(n,2), 1 + (2n-7)/3 · C(n,2))` for the degeneracy locus
/// of a general `n × (n-1)` matrix of linear forms on `Pⁿ`.
pub fn determinantal_invariants(n: u32) -> Result<(BigInt, BigInt), FormulaError> {
    if n < 3 {
        return Err(FormulaError::AmbientTooSmall { n, min: 3 });
    }
    let c = binomial(i64::from(n), 2);
    let genus = Rational::from_integer(c.clone()) * frac(2 * i64::from(n) - 7, 3) + int(1);
    if !is_integral(&genus) {
        return Err(FormulaError::NonIntegral {
            what: "sectional genus",
            value: crate::exact::format_rational(&genus),
        });
    }
    Ok((c, genus.to_integer()))
}

/// Center of the adjunction blow-up `F → P^(n-2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterInvariants {
    pub degree: BigInt,
    pub sectional_genus: BigInt,
    /// `n - 4`: points for `n = 4`, a curve for `n = 5`.
    pub dimension: u32,
}

/// `(C(n+1,2), n(2n-5)(n+1)/6 - 1)`; the genus value is reported even when the
/// center is zero-dimensional.
pub fn blowup_center_invariants(n: u32) -> Result<CenterInvariants, FormulaError> {
    if n < 4 {
        return Err(FormulaError::AmbientTooSmall { n, min: 4 });
    }
    let m = i64::from(n);
    let genus = frac(m * (2 * m - 5) * (m + 1), 6) - int(1);
    if !is_integral(&genus) {
        return Err(FormulaError::NonIntegral {
            what: "center sectional genus",
            value: crate::exact::format_rational(&genus),
        });
    }
    Ok(CenterInvariants {
        degree: binomial(m + 1, 2),
        sectional_genus: genus.to_integer(),
        dimension: n - 4,
    })
}

/// Degree window `(n-1)/k < m < (n-1)²` for the reduced focal locus of a
/// first-order congruence of `(n-1)`-secant lines, `k` its geometric
/// multiplicity.
pub fn dgb_bound_check(n: u32, m: i64, k: i64) -> Result<bool, FormulaError> {
    if n < 2 || m < 1 || k < 1 {
        return Err(FormulaError::BadBoundInput);
    }
    let n1 = i64::from(n) - 1;
    Ok(n1 < m * k && m < n1 * n1)
}
