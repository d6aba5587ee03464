use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{int, primitive_integer_vector, ExactError, Rational};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Ragged);
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::Ragged);
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for tests and literal data.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.first_skew_violation().is_none()
    }

    pub(crate) fn first_skew_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(i, j) != -self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Row vector times matrix: `vᵀ·M`.
    pub fn vec_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * self.get(i, j);
            }
        }
        out
    }

    /// Bilinear form `uᵀ·M·v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.vec_mul(u)
            .iter()
            .zip(v)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().pivots.len()
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<Rational, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        // Row scaling by the row denominators is undone at the end.
        let mut scale = Rational::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let (row, lcm) = clear_row(self.row(i));
            scale /= Rational::from_integer(lcm);
            m.push(row);
        }
        let n = self.rows;
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = exact_div(num, &prev);
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = Rational::from_integer(m[n - 1][n - 1].clone()) * scale;
        Ok(if sign < 0 { -det } else { det })
    }

    fn bareiss_echelon(&self) -> Echelon {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows).map(|i| clear_row(self.row(i)).0).collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = exact_div(num, &prev);
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Echelon { rows: m, pivots }
    }
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn clear_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    (ints, lcm)
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "Bareiss division was not exact");
    q
}

/// Rank and a basis of the right kernel `{v : m·v = 0}`.
///
/// Elimination is fraction-free over the integers (rows are first cleared of
/// denominators); only the final back substitution uses rationals. Kernel
/// vectors are returned as primitive integer vectors.
pub fn rank_and_kernel(m: &RationalMatrix) -> (usize, Vec<Vec<Rational>>) {
    let ech = m.bareiss_echelon();
    let rank = ech.pivots.len();
    let mut basis = Vec::with_capacity(m.cols - rank);
    let free: Vec<usize> = (0..m.cols).filter(|c| !ech.pivots.contains(c)).collect();
    for &f in &free {
        let mut v = vec![Rational::zero(); m.cols];
        v[f] = Rational::one();
        for (r, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[r];
            let mut acc = Rational::zero();
            for j in pc + 1..m.cols {
                if !row[j].is_zero() && !v[j].is_zero() {
                    acc += Rational::from_integer(row[j].clone()) * &v[j];
                }
            }
            v[pc] = -acc / Rational::from_integer(row[pc].clone());
        }
        let prim = primitive_integer_vector(&v);
        basis.push(prim.into_iter().map(Rational::from_integer).collect());
    }
    (rank, basis)
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(super::format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::seeded_random_matrix;
    use proptest::prelude::*;

    fn annihilates(m: &RationalMatrix, v: &[Rational]) -> bool {
        m.mul_vec(v).iter().all(Zero::is_zero)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let (rank, ker) = rank_and_kernel(&RationalMatrix::identity(2));
        assert_eq!(rank, 2);
        assert!(ker.is_empty());
    }

    #[test]
    fn single_row_of_ones() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1, 1]]);
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank, 1);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(annihilates(&m, v));
        }
    }

    #[test]
    fn kernel_spans_middle_coordinates() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank, 2);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(v[0].is_zero() && v[3].is_zero());
        }
        let span = RationalMatrix::from_rows(ker).unwrap();
        assert_eq!(span.rank(), 2);
    }

    #[test]
    fn rational_entries_and_rank_deficiency() {
        let half = Rational::new(1.into(), 2.into());
        let m = RationalMatrix::from_rows(vec![
            vec![half.clone(), int(1), int(2)],
            vec![int(1), int(2), int(4)],
            vec![int(0), int(0), half.clone()],
        ])
        .unwrap();
        let (rank, ker) = rank_and_kernel(&m);
        assert_eq!(rank, 2);
        assert_eq!(ker, vec![vec![int(2), int(-1), int(0)]]);
    }

    #[test]
    fn determinant_small_cases() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant().unwrap(), int(1));
        let m = RationalMatrix::from_i64_rows(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.determinant().unwrap(), int(-2));
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.determinant().unwrap(), int(0));
        assert!(RationalMatrix::zeros(2, 3).determinant().is_err());
    }

    fn leibniz_det(m: &RationalMatrix) -> Rational {
        fn rec(m: &RationalMatrix, row: usize, used: &mut Vec<bool>, sign: i32) -> Rational {
            let n = m.rows();
            if row == n {
                return if sign > 0 { int(1) } else { int(-1) };
            }
            let mut acc = Rational::zero();
            for c in 0..n {
                if used[c] {
                    continue;
                }
                let inversions = (0..c).filter(|&k| used[k]).count();
                let s = if (c - inversions) % 2 == 0 { sign } else { -sign };
                used[c] = true;
                let e = m.get(row, c);
                if !e.is_zero() {
                    acc += e * rec(m, row + 1, used, s);
                }
                used[c] = false;
            }
            acc
        }
        rec(m, 0, &mut vec![false; m.rows()], 1)
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6, bound in 1i64..4) {
            let m = seeded_random_matrix(seed, rows, cols, bound, false).unwrap();
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_is_annihilated_and_independent(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..7) {
            let m = seeded_random_matrix(seed, rows, cols, 2, false).unwrap();
            let (rank, ker) = rank_and_kernel(&m);
            prop_assert_eq!(rank + ker.len(), cols);
            for v in &ker {
                prop_assert!(annihilates(&m, v));
            }
            if !ker.is_empty() {
                prop_assert_eq!(RationalMatrix::from_rows(ker).unwrap().rank(), cols - rank);
            }
        }

        #[test]
        fn odd_skew_determinant_vanishes(seed in any::<u64>(), half in 0usize..3) {
            let size = 2 * half + 1;
            let m = seeded_random_matrix(seed, size, size, 9, true).unwrap();
            prop_assert_eq!(m.determinant().unwrap(), int(0));
        }

        #[test]
        fn bareiss_matches_leibniz(seed in any::<u64>(), size in 1usize..6) {
            let m = seeded_random_matrix(seed, size, size, 5, false).unwrap();
            prop_assert_eq!(m.determinant().unwrap(), leibniz_det(&m));
        }
    }
}
