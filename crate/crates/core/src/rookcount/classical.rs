//! Classical rook and hit numbers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::boards::Board;
use crate::error::{Error, Result};
use crate::exactpoly::{binom, factorial};

/// `r_0, ..., r_{min(m,n)}`: placements of `k` non-attacking rooks on `b`.
pub fn classical_rooks(b: &Board) -> Vec<BigInt> {
    let top = b.m().min(b.n());
    // used-column mask -> counts by number of rooks, after processing some rows
    let mut states: HashMap<u64, Vec<u128>> = HashMap::new();
    states.insert(0, vec![1]);
    for i in 1..=b.m() {
        let row = b.row_mask(i);
        let mut next: HashMap<u64, Vec<u128>> = HashMap::with_capacity(states.len() * 2);
        for (used, counts) in &states {
            add_into(next.entry(*used).or_default(), counts, 0);
            let mut free = row & !used;
            while free != 0 {
                let bit = free & free.wrapping_neg();
                add_into(next.entry(used | bit).or_default(), counts, 1);
                free &= free - 1;
            }
        }
        states = next;
    }
    let mut out = vec![BigInt::zero(); top + 1];
    for counts in states.values() {
        for (k, c) in counts.iter().enumerate() {
            out[k] += BigInt::from(*c);
        }
    }
    out
}

fn add_into(dst: &mut Vec<u128>, src: &[u128], shift: usize) {
    if dst.len() < src.len() + shift {
        dst.resize(src.len() + shift, 0);
    }
    for (k, c) in src.iter().enumerate() {
        dst[k + shift] += c;
    }
}

/// Hit numbers by direct count: over injective maps `rows -> columns` of the
/// full rectangle, how many meet `b` in exactly `i` cells. Requires `m <= n`.
pub fn hits_direct(b: &Board) -> Result<Vec<BigInt>> {
    let (m, n) = (b.m(), b.n());
    if m > n {
        return Err(Error::InvalidInput(format!("hit numbers need m <= n, got {m}x{n}")));
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut states: HashMap<u64, Vec<u128>> = HashMap::new();
    states.insert(0, vec![1]);
    for i in 1..=m {
        let row = b.row_mask(i);
        let mut next: HashMap<u64, Vec<u128>> = HashMap::with_capacity(states.len() * 2);
        for (used, counts) in &states {
            let mut free = full & !used;
            while free != 0 {
                let bit = free & free.wrapping_neg();
                add_into(next.entry(used | bit).or_default(), counts, usize::from(row & bit != 0));
                free &= free - 1;
            }
        }
        states = next;
    }
    let mut out = vec![BigInt::zero(); m + 1];
    for counts in states.values() {
        for (k, c) in counts.iter().enumerate() {
            out[k] += BigInt::from(*c);
        }
    }
    Ok(out)
}

/// Hit numbers from rook numbers:
/// `sum_i h_i t^i = sum_i r_i (n-i)!/(n-m)! (t-1)^i`.
pub fn hits_from_rooks(rooks: &[BigInt], m: usize, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m + 1];
    let base = factorial(n - m);
    for (i, r) in rooks.iter().enumerate().take(m + 1) {
        let w = r * (factorial(n - i) / &base);
        // (t - 1)^i = sum_k binom(i,k) t^k (-1)^{i-k}
        for k in 0..=i {
            let term = &w * binom(i as i64, k as i64);
            if (i - k) % 2 == 0 {
                out[k] += term;
            } else {
                out[k] -= term;
            }
        }
    }
    out
}

/// `h_0, ..., h_m`, computed both directly and from the rook numbers.
/// A disagreement is reported as [`Error::IdentityFailure`].
pub fn classical_hits(b: &Board) -> Result<Vec<BigInt>> {
    let direct = hits_direct(b)?;
    let via_rooks = hits_from_rooks(&classical_rooks(b), b.m(), b.n());
    if direct != via_rooks {
        return Err(Error::IdentityFailure(format!(
            "hit numbers disagree: direct {direct:?}, from rook numbers {via_rooks:?}"
        )));
    }
    Ok(direct)
}

/// Number of permutations of `n` with no fixed point.
pub fn derangements(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::one(), BigInt::zero()); // d_0, d_1
    if n == 0 {
        return a;
    }
    for k in 2..=n {
        let c = BigInt::from(k - 1) * (&a + &b);
        a = b;
        b = c;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boards::{bidiagonal, diagonal, menage};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bidiagonal_and_menage_rook_numbers() {
        let n = 4i64;
        let r = classical_rooks(&bidiagonal(4));
        for i in 0..=n {
            assert_eq!(r[i as usize], binom(2 * n - i, i));
        }
        let r = classical_rooks(&menage(4));
        for i in 0..=n {
            let expect = binom(2 * n - i, i) * BigInt::from(2 * n) / BigInt::from(2 * n - i);
            assert_eq!(r[i as usize], expect);
        }
        assert_eq!(classical_rooks(&Board::empty(3, 3)), ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn hit_examples() {
        assert_eq!(classical_hits(&diagonal(4)).unwrap()[0], BigInt::from(9));
        assert_eq!(classical_hits(&menage(4)).unwrap()[0], BigInt::from(2));
        assert_eq!(classical_hits(&Board::full(2, 2)).unwrap(), ints(&[0, 0, 2]));
        assert!(classical_hits(&Board::full(3, 2)).is_err());
    }

    #[test]
    fn hits_agree_on_all_small_rectangular_boards() {
        for b in Board::all_in(2, 3).chain(Board::all_in(3, 3)) {
            classical_hits(&b).unwrap();
        }
    }

    #[test]
    fn derangement_numbers() {
        let d: Vec<BigInt> = (0..7).map(derangements).collect();
        assert_eq!(d, ints(&[1, 0, 1, 2, 9, 44, 265]));
    }
}
