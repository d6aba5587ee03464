use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{int, ExactError, Rational, RationalMatrix};

pub const DEFAULT_BOUND: i64 = 9;

/// Mixes a base seed with a stream index (SplitMix64 finalizer), so that
/// per-attempt and per-trial seeds are independent of evaluation order.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Integer matrix with entries uniform in `[-bound, bound]`.
///
/// The generator is ChaCha8 seeded with `seed` via `seed_from_u64`. Entries
/// are drawn in row-major order; for `skew` only the strict upper triangle is
/// drawn (row-major) and mirrored with opposite sign.
pub fn seeded_random_matrix(
    seed: u64,
    rows: usize,
    cols: usize,
    bound: i64,
    skew: bool,
) -> Result<RationalMatrix, ExactError> {
    if bound < 1 {
        return Err(ExactError::ZeroBound);
    }
    if skew && rows != cols {
        return Err(ExactError::SkewShape { rows, cols });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = RationalMatrix::zeros(rows, cols);
    if skew {
        for i in 0..rows {
            for j in i + 1..cols {
                let v: i64 = rng.gen_range(-bound..=bound);
                m.set(i, j, int(v));
                m.set(j, i, int(-v));
            }
        }
    } else {
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, int(rng.gen_range(-bound..=bound)));
            }
        }
    }
    Ok(m)
}

/// Random nonzero integer point with coordinates in `[-bound, bound]`.
pub(crate) fn seeded_random_point(seed: u64, len: usize, bound: i64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let p: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        if p.iter().any(|&x| x != 0) {
            return p.into_iter().map(int).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    #[test]
    fn skew_two_by_two_shape() {
        let m = seeded_random_matrix(1, 2, 2, 5, true).unwrap();
        assert!(m.get(0, 0).is_zero() && m.get(1, 1).is_zero());
        assert_eq!(*m.get(1, 0), -m.get(0, 1));
        assert!(m.get(0, 1).abs() <= int(5));
    }

    #[test]
    fn same_seed_same_matrix() {
        let a = seeded_random_matrix(1, 4, 3, 9, false).unwrap();
        let b = seeded_random_matrix(1, 4, 3, 9, false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_both_skew() {
        let a = seeded_random_matrix(1, 6, 6, 9, true).unwrap();
        let b = seeded_random_matrix(2, 6, 6, 9, true).unwrap();
        assert!(a.is_skew_symmetric() && b.is_skew_symmetric());
    }

    #[test]
    fn entries_within_bound() {
        let m = seeded_random_matrix(77, 10, 10, 3, false).unwrap();
        assert!(m.entries().iter().all(|e| e.abs() <= int(3)));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(seeded_random_matrix(1, 2, 3, 9, true), Err(ExactError::SkewShape { rows: 2, cols: 3 }));
        assert_eq!(seeded_random_matrix(1, 2, 2, 0, false), Err(ExactError::ZeroBound));
    }

    #[test]
    fn derived_seeds_differ() {
        let s: Vec<u64> = (0..8).map(|i| derive_seed(42, i)).collect();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                assert_ne!(s[i], s[j]);
            }
        }
        assert_eq!(derive_seed(42, 3), derive_seed(42, 3));
    }
}
