//! Probability that a random matrix on `B` extended by `k` full rows has rank `m`,
//! and its generating function in terms of the hit numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use super::hits_numeric;
use crate::boards::Board;
use crate::error::{Error, Result};
use crate::rookcount::{brute_profile, v_count_numeric, FieldCounts};

fn q_pow(q: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        Pow::pow(&base, e as u32)
    } else {
        Pow::pow(&base, (-e) as u32).recip()
    }
}

/// `B` with `k` full rows appended below.
pub fn extend_board(b: &Board, k: usize) -> Result<Board> {
    let mut rows = b.row_masks().to_vec();
    let full = if b.n() == 64 { u64::MAX } else { (1u64 << b.n()) - 1 };
    rows.extend(std::iter::repeat(full).take(k));
    Board::from_row_masks(b.m() + k, b.n(), rows)
}

/// `F_k(B, q) = m_m(B_k, q) / q^{nk + |B|}` by brute force on the extended board.
pub fn f_k(b: &Board, q: u64, k: usize, budget: u64) -> Result<BigRational> {
    let ext = extend_board(b, k)?;
    let counts = brute_profile(&ext, q, budget)?;
    let hit = counts.counts.get(b.m()).cloned().unwrap_or_else(BigInt::zero);
    Ok(BigRational::from_integer(hit) * q_pow(q, -((b.n() * k + b.len()) as i64)))
}

/// `F_k` from the rank profile of `B` alone: a rank-`r` matrix on `B` extends in
/// `q^{rk} v_{m-r}(k x (n-r))` ways to a rank-`m` matrix on `B_k`.
pub fn f_k_from_profile(counts: &FieldCounts, size_b: usize, k: usize) -> BigRational {
    let (m, n, q) = (counts.m, counts.n, counts.q);
    let mut acc = BigInt::zero();
    for (r, mr) in counts.counts.iter().enumerate() {
        if r > m || mr.is_zero() {
            continue;
        }
        let ext = v_count_numeric(k, n - r, m - r, q);
        acc += mr * Pow::pow(&BigInt::from(q), (r * k) as u32) * ext;
    }
    BigRational::from_integer(acc) * q_pow(q, -((n * k + size_b) as i64))
}

/// First `terms` coefficients of
/// `q^{-|B| - mn} (q-1)^m / (t q^{-n}; q)_{m+1} * sum_i H_i q^{ni} t^{m-i}`
/// at a fixed `q`, from numeric hit numbers.
pub fn f_infty_from_hits(
    hits: &[BigRational],
    m: usize,
    n: usize,
    size_b: usize,
    q: u64,
    terms: usize,
) -> Vec<BigRational> {
    // numerator polynomial in t
    let mut series = vec![BigRational::zero(); terms];
    for (i, h) in hits.iter().enumerate().take(m + 1) {
        let deg = m - i;
        if deg < terms {
            series[deg] += h * q_pow(q, (n * i) as i64);
        }
    }
    // divide by prod_{j=0}^{m} (1 - q^{j-n} t), one geometric factor at a time
    for j in 0..=m {
        let a = q_pow(q, j as i64 - n as i64);
        for k in 1..terms {
            let prev = series[k - 1].clone();
            series[k] += &a * prev;
        }
    }
    let pre = q_pow(q, -((size_b + m * n) as i64))
        * Pow::pow(&BigRational::from_integer(BigInt::from(q - 1)), m as u32);
    series.into_iter().map(|c| c * &pre).collect()
}

/// `F_0 .. F_K` through the hit polynomial, with the board's profile found by
/// brute force at `q`.
pub fn f_infty_series(b: &Board, q: u64, max_k: usize, budget: u64) -> Result<Vec<BigRational>> {
    if b.m() > b.n() {
        return Err(Error::InvalidInput("the series needs m <= n".into()));
    }
    let counts = brute_profile(b, q, budget)?;
    let reduced = counts.reduced()?;
    let hits = hits_numeric(&reduced, b.m(), b.n(), q)?;
    Ok(f_infty_from_hits(&hits, b.m(), b.n(), b.len(), q, max_k + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rookcount::DEFAULT_BUDGET;
    use num_traits::One;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn small_probabilities() {
        assert_eq!(f_k(&Board::empty(1, 1), 2, 0, DEFAULT_BUDGET).unwrap(), rat(0, 1));
        assert_eq!(f_k(&Board::full(1, 1), 2, 0, DEFAULT_BUDGET).unwrap(), rat(1, 2));
        assert_eq!(f_k(&Board::empty(1, 2), 2, 1, DEFAULT_BUDGET).unwrap(), rat(3, 4));
    }

    #[test]
    fn one_cell_series() {
        let s = f_infty_series(&Board::full(1, 1), 2, 5, DEFAULT_BUDGET).unwrap();
        for (k, c) in s.iter().enumerate() {
            assert_eq!(*c, BigRational::one() - rat(1, 1 << (k + 1)));
        }
    }

    #[test]
    fn profile_formula_matches_brute_force() {
        for b in Board::all_in(2, 2) {
            let counts = brute_profile(&b, 3, DEFAULT_BUDGET).unwrap();
            for k in 0..=3 {
                assert_eq!(f_k_from_profile(&counts, b.len(), k), f_k(&b, 3, k, DEFAULT_BUDGET).unwrap());
            }
        }
    }
}
