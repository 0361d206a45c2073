//! Matrix counts by rank over a prime field, by exhaustive enumeration.
//!
//! This is the ground truth every symbolic pipeline is checked against. Rows
//! are filled one at a time while an echelon basis of the rows so far is kept;
//! the final row is counted in closed form (the vectors supported on its cells
//! that fall inside the current span form a subspace).

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boards::Board;
use crate::error::{Error, Result};

/// Default cap on `q^{|B|}`.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Exact counts `m_0(B, q), ..., m_{min(m,n)}(B, q)` at a fixed prime `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCounts {
    pub m: usize,
    pub n: usize,
    pub q: u64,
    #[serde(with = "crate::exactpoly::serde_big::vec")]
    pub counts: Vec<BigInt>,
}

impl FieldCounts {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// `m_r / (q-1)^r`; fails if some division is inexact.
    pub fn reduced(&self) -> Result<Vec<BigInt>> {
        let unit = BigInt::from(self.q - 1);
        self.counts
            .iter()
            .enumerate()
            .map(|(r, c)| {
                let d = Pow::pow(&unit, r as u32);
                if (c % &d).is_zero() {
                    Ok(c / d)
                } else {
                    Err(Error::IdentityFailure(format!("m_{r} = {c} is not divisible by (q-1)^{r}")))
                }
            })
            .collect()
    }
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Rank profile of all matrices supported on `b` over `F_q`, `q` prime.
///
/// Fails with [`Error::BudgetExceeded`] when `q^{|B|}` exceeds `budget`.
pub fn brute_profile(b: &Board, q: u64, budget: u64) -> Result<FieldCounts> {
    if !is_prime(q) || q > 251 {
        return Err(Error::InvalidInput(format!("q = {q} must be a prime below 256")));
    }
    let required = Pow::pow(&BigInt::from(q), b.len() as u32);
    if required > BigInt::from(budget) {
        return Err(Error::BudgetExceeded { required: format!("{q}^{}", b.len()), budget });
    }
    let rows: Vec<u64> = b.row_masks().iter().copied().filter(|&r| r != 0).collect();
    let top = b.m().min(b.n());
    let raw = if q == 2 { run(&Gf2, &rows, top) } else { run(&Gfp::new(q, b.n()), &rows, top) };
    Ok(FieldCounts { m: b.m(), n: b.n(), q, counts: raw.into_iter().map(BigInt::from).collect() })
}

/// `m_r(B, q)` for a single rank.
pub fn brute_m(b: &Board, q: u64, r: usize, budget: u64) -> Result<BigInt> {
    let p = brute_profile(b, q, budget)?;
    Ok(p.counts.get(r).cloned().unwrap_or_else(BigInt::zero))
}

trait Field: Sync {
    type V: Clone + Send + Sync;
    fn q(&self) -> u64;
    fn for_each_vector(&self, mask: u64, f: &mut dyn FnMut(&Self::V));
    /// Reduces `v` by the basis; `Some((pivot, w))` with `w` normalized if independent.
    fn reduce(&self, basis: &[(usize, Self::V)], v: &Self::V) -> Option<(usize, Self::V)>;
    /// Dimension of the span of `basis` intersected with vectors supported on `mask`.
    fn dim_inside(&self, basis: &[(usize, Self::V)], mask: u64) -> usize;
}

struct Gf2;

impl Field for Gf2 {
    type V = u64;

    fn q(&self) -> u64 {
        2
    }

    fn for_each_vector(&self, mask: u64, f: &mut dyn FnMut(&u64)) {
        let mut sub = mask;
        loop {
            f(&sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }

    fn reduce(&self, basis: &[(usize, u64)], v: &u64) -> Option<(usize, u64)> {
        let mut v = *v;
        for &(p, b) in basis {
            if v >> p & 1 == 1 {
                v ^= b;
            }
        }
        (v != 0).then(|| (v.trailing_zeros() as usize, v))
    }

    fn dim_inside(&self, basis: &[(usize, u64)], mask: u64) -> usize {
        let mut proj: Vec<(usize, u64)> = Vec::with_capacity(basis.len());
        for &(_, b) in basis {
            if let Some(x) = self.reduce(&proj, &(b & !mask)) {
                proj.push(x);
            }
        }
        basis.len() - proj.len()
    }
}

struct Gfp {
    q: u64,
    n: usize,
    inv: Vec<u8>,
}

impl Gfp {
    fn new(q: u64, n: usize) -> Self {
        let mut inv = vec![0u8; q as usize];
        for a in 1..q {
            let x = (1..q).find(|x| a * x % q == 1).expect("prime field");
            inv[a as usize] = x as u8;
        }
        Gfp { q, n, inv }
    }

    fn eliminate(&self, basis: &[(usize, Vec<u8>)], v: &mut [u8]) {
        let q = self.q as u32;
        for (p, b) in basis {
            let c = v[*p] as u32;
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = ((*x as u32 + (q - c) * y as u32) % q) as u8;
                }
            }
        }
    }
}

impl Field for Gfp {
    type V = Vec<u8>;

    fn q(&self) -> u64 {
        self.q
    }

    fn for_each_vector(&self, mask: u64, f: &mut dyn FnMut(&Vec<u8>)) {
        let cells: Vec<usize> = (0..self.n).filter(|j| mask >> j & 1 == 1).collect();
        let mut v = vec![0u8; self.n];
        loop {
            f(&v);
            // odometer step
            let mut k = 0;
            loop {
                if k == cells.len() {
                    return;
                }
                let c = cells[k];
                v[c] += 1;
                if (v[c] as u64) < self.q {
                    break;
                }
                v[c] = 0;
                k += 1;
            }
        }
    }

    fn reduce(&self, basis: &[(usize, Vec<u8>)], v: &Vec<u8>) -> Option<(usize, Vec<u8>)> {
        let mut w = v.clone();
        self.eliminate(basis, &mut w);
        let p = w.iter().position(|&x| x != 0)?;
        let s = self.inv[w[p] as usize] as u32;
        for x in &mut w {
            *x = (*x as u32 * s % self.q as u32) as u8;
        }
        Some((p, w))
    }

    fn dim_inside(&self, basis: &[(usize, Vec<u8>)], mask: u64) -> usize {
        let mut proj: Vec<(usize, Vec<u8>)> = Vec::with_capacity(basis.len());
        for (_, b) in basis {
            let mut w = b.clone();
            for (j, x) in w.iter_mut().enumerate() {
                if mask >> j & 1 == 1 {
                    *x = 0;
                }
            }
            if let Some(x) = self.reduce(&proj, &w) {
                proj.push(x);
            }
        }
        basis.len() - proj.len()
    }
}

fn dfs<F: Field>(f: &F, rows: &[u64], idx: usize, basis: &mut Vec<(usize, F::V)>, out: &mut [u128]) {
    let rank = basis.len();
    if idx == rows.len() {
        out[rank] += 1;
        return;
    }
    if idx + 1 == rows.len() {
        let q = f.q() as u128;
        let total = q.pow(rows[idx].count_ones());
        let inside = q.pow(f.dim_inside(basis, rows[idx]) as u32);
        out[rank] += inside;
        out[rank + 1] += total - inside;
        return;
    }
    f.for_each_vector(rows[idx], &mut |v| match f.reduce(basis, v) {
        None => dfs(f, rows, idx + 1, basis, out),
        Some(x) => {
            basis.push(x);
            dfs(f, rows, idx + 1, basis, out);
            basis.pop();
        }
    });
}

fn run<F: Field>(f: &F, rows: &[u64], top: usize) -> Vec<u128> {
    // Expand a few leading rows into independent tasks for the thread pool.
    let mut frontier: Vec<Vec<(usize, F::V)>> = vec![Vec::new()];
    let mut idx = 0;
    while idx + 1 < rows.len() && frontier.len() < 256 {
        let width = (f.q() as u128).pow(rows[idx].count_ones());
        if frontier.len() as u128 * width > 1 << 18 {
            break;
        }
        let mut next = Vec::with_capacity(frontier.len() * width as usize);
        for basis in &frontier {
            f.for_each_vector(rows[idx], &mut |v| {
                let mut nb = basis.clone();
                if let Some(x) = f.reduce(basis, v) {
                    nb.push(x);
                }
                next.push(nb);
            });
        }
        frontier = next;
        idx += 1;
    }
    frontier
        .into_par_iter()
        .map(|mut basis| {
            let mut out = vec![0u128; top + 2];
            dfs(f, rows, idx, &mut basis, &mut out);
            out
        })
        .reduce(
            || vec![0u128; top + 2],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
        .into_iter()
        .take(top + 1)
        .collect()
}

/// The number of all `m x n` matrices of rank `k` at a numeric `q`, for cross-checks.
pub fn v_count_numeric(m: usize, n: usize, k: usize, q: u64) -> BigInt {
    if k > m.min(n) {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    for i in 0..k as u32 {
        num *= (Pow::pow(&q, m as u32 - i) - 1u32) * (Pow::pow(&q, n as u32) - Pow::pow(&q, i));
        num /= Pow::pow(&q, i + 1) - 1u32;
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boards::{diagonal, Board};

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(brute_m(&diagonal(2), 3, 1, DEFAULT_BUDGET).unwrap(), big(4));
        assert_eq!(brute_m(&Board::full(2, 2), 2, 2, DEFAULT_BUDGET).unwrap(), big(6));
        for q in [2, 3, 5] {
            assert_eq!(brute_m(&Board::empty(3, 2), q, 0, DEFAULT_BUDGET).unwrap(), big(1));
        }
        assert_eq!(brute_m(&Board::full(2, 2), 2, 1, DEFAULT_BUDGET).unwrap(), big(9));
    }

    #[test]
    fn full_rectangles_match_the_product_formula() {
        for (m, n) in [(1, 1), (2, 3), (3, 2), (3, 3), (2, 5)] {
            for q in [2, 3, 5] {
                if (q as f64).powi((m * n) as i32) > 2e6 {
                    continue;
                }
                let p = brute_profile(&Board::full(m, n), q, DEFAULT_BUDGET).unwrap();
                for k in 0..=m.min(n) {
                    assert_eq!(p.counts[k], v_count_numeric(m, n, k, q), "{m}x{n} q={q} k={k}");
                }
            }
        }
    }

    /// Rank by plain Gaussian elimination on a dense matrix, for the oracle check.
    fn naive_profile(b: &Board, q: u64) -> Vec<u128> {
        let cells = b.cells();
        let mut out = vec![0u128; b.m().min(b.n()) + 1];
        let total = q.pow(cells.len() as u32);
        for code in 0..total {
            let mut a = vec![vec![0u64; b.n()]; b.m()];
            let mut c = code;
            for &(i, j) in &cells {
                a[i - 1][j - 1] = c % q;
                c /= q;
            }
            let mut rank = 0;
            for col in 0..b.n() {
                let Some(p) = (rank..b.m()).find(|&r| a[r][col] != 0) else { continue };
                a.swap(rank, p);
                let inv = (1..q).find(|x| a[rank][col] * x % q == 1).unwrap();
                for r in 0..b.m() {
                    if r != rank && a[r][col] != 0 {
                        let f = a[r][col] * inv % q;
                        for k in 0..b.n() {
                            a[r][k] = (a[r][k] + (q - f) * a[rank][k]) % q;
                        }
                    }
                }
                rank += 1;
            }
            out[rank] += 1;
        }
        out
    }

    #[test]
    fn agrees_with_naive_elimination() {
        for bits in [0b1011_0110_1u64, 0b111_111_111, 0b100_010_001, 0b011_101_110] {
            let cells = (0..9).filter(|k| bits >> k & 1 == 1).map(|k| (k / 3 + 1, k % 3 + 1));
            let b = Board::from_cells(3, 3, cells).unwrap();
            for q in [2, 3] {
                let fast = brute_profile(&b, q, DEFAULT_BUDGET).unwrap();
                let slow: Vec<BigInt> = naive_profile(&b, q).into_iter().map(BigInt::from).collect();
                assert_eq!(fast.counts, slow, "{b:?} q={q}");
            }
        }
    }

    #[test]
    fn budget_and_field_checks() {
        let b = Board::full(4, 4);
        assert!(matches!(brute_profile(&b, 3, 1000), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(brute_profile(&b, 4, DEFAULT_BUDGET), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn reduced_counts_divide() {
        let p = brute_profile(&Board::full(3, 3), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.total(), BigInt::from(3u64.pow(9)));
        let r = p.reduced().unwrap();
        assert_eq!(r[1], big(13 * 13));
    }
}
