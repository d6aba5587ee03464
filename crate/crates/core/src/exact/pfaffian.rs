use std::collections::HashMap;

use super::{ExactError, MultiPoly, Rational, RationalMatrix};

/// Dense matrix of polynomials sharing one variable count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::Ragged);
        }
        assert!(
            rows.iter().flatten().all(|p| p.nvars() == nvars),
            "variable count mismatch"
        );
        Ok(Self {
            rows: rows.len(),
            cols,
            nvars,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Constant matrix lifted into `nvars` variables.
    pub fn constant(m: &RationalMatrix, nvars: usize) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            nvars,
            entries: m.entries().iter().map(|c| MultiPoly::constant(nvars, c.clone())).collect(),
        }
    }

    /// `Σ x_i · M_i` with one variable per matrix.
    pub fn linear_combination(mats: &[RationalMatrix]) -> Self {
        let nvars = mats.len();
        let (rows, cols) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let mut entries = vec![MultiPoly::zero(nvars); rows * cols];
        for (v, m) in mats.iter().enumerate() {
            assert_eq!((m.rows(), m.cols()), (rows, cols), "shape mismatch");
            let x = MultiPoly::var(nvars, v);
            for (e, c) in entries.iter_mut().zip(m.entries()) {
                *e = &*e + &x.scale(c);
            }
        }
        Self {
            rows,
            cols,
            nvars,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, row: usize, col: usize) -> &MultiPoly {
        &self.entries[row * self.cols + col]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Self {
            rows: rows.len(),
            cols: cols.len(),
            nvars: self.nvars,
            entries,
        }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.first_skew_violation().is_none()
    }

    fn first_skew_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(i, j) != -self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn eval(&self, point: &[Rational]) -> RationalMatrix {
        RationalMatrix::from_entries(
            self.rows,
            self.cols,
            self.entries.iter().map(|p| p.eval(point)).collect(),
        )
        .expect("shape preserved")
    }
}

/// Pfaffian by expansion along the first row, normalized so that
/// `Pf([[0, 1], [-1, 0]]) = 1`.
pub fn pfaffian(m: &PolyMatrix) -> Result<MultiPoly, ExactError> {
    if m.rows != m.cols {
        return Err(ExactError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows % 2 == 1 {
        return Err(ExactError::OddSize(m.rows));
    }
    if let Some((row, col)) = m.first_skew_violation() {
        return Err(ExactError::NotSkew { row, col });
    }
    let idx: Vec<usize> = (0..m.rows).collect();
    Ok(pfaffian_rec(m, &idx))
}

fn pfaffian_rec(m: &PolyMatrix, idx: &[usize]) -> MultiPoly {
    if idx.is_empty() {
        return MultiPoly::one(m.nvars);
    }
    let first = idx[0];
    let mut acc = MultiPoly::zero(m.nvars);
    for k in 1..idx.len() {
        let a = m.get(first, idx[k]);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&j| j != idx[k]).collect();
        let term = a * &pfaffian_rec(m, &rest);
        // Position k (0-based) in the remaining list carries sign (-1)^(k+1).
        acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Determinant of a square polynomial matrix by Laplace expansion over rows,
/// memoized on the set of columns already used.
pub fn determinant(m: &PolyMatrix) -> Result<MultiPoly, ExactError> {
    if m.rows != m.cols {
        return Err(ExactError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    assert!(m.rows <= 24, "Laplace expansion limited to small matrices");
    let mut memo = HashMap::new();
    Ok(det_rec(m, 0, 0u32, &mut memo))
}

fn det_rec(m: &PolyMatrix, row: usize, used: u32, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
    if row == m.rows {
        return MultiPoly::one(m.nvars);
    }
    if let Some(p) = memo.get(&used) {
        return p.clone();
    }
    let mut acc = MultiPoly::zero(m.nvars);
    let mut position = 0;
    for c in 0..m.cols {
        if used & (1 << c) != 0 {
            continue;
        }
        let a = m.get(row, c);
        if !a.is_zero() {
            let minor = det_rec(m, row + 1, used | (1 << c), memo);
            let term = a * &minor;
            acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        position += 1;
    }
    memo.insert(used, acc.clone());
    acc
}
