//! q-Krawtchouk polynomials and the complement transform on rank profiles.
//!
//! For `B` inside `[m] x [n]` with `m <= n`,
//! `m_r(complement B) = q^{-|B|} sum_i K_r(i) m_i(B)`.
//! Profiles of boards with `m > n` are handled through the transpose, which
//! leaves rank counts unchanged.

mod identities;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{choose2, qbinom, qpoch, QPoly};
use crate::boards::Board;
use crate::rookcount::{m_ne_all, CountKind, FieldCounts, RankCounts};

pub use identities::{
    check_index_shift, check_orthogonality, check_symmetry, check_three_term, kraw_identity_lhs_rhs,
};

/// `K^{m,n}_r(i) = sum_s (-1)^{r-s} q^{ns + C(r-s, 2)} [m-s, r-s]_q [m-i, s]_q`,
/// over `0 <= s <= min(r, m - i)`. Zero when `r < 0` or `r > m`.
pub fn kraw(m: usize, n: usize, r: i64, i: usize) -> QPoly {
    if r < 0 || r > m as i64 || i > m {
        return QPoly::zero();
    }
    let (m, n) = (m as i64, n as i64);
    let i = i as i64;
    let mut acc = QPoly::zero();
    for s in 0..=r.min(m - i) {
        let d = r - s;
        let mut term = qbinom(m - s, d) * qbinom(m - i, s);
        term = term.shifted(n * s + choose2(d));
        if d % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    acc
}

/// All `K_r(i)` for one rectangle, `0 <= r, i <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrawTable {
    pub m: usize,
    pub n: usize,
    /// `entries[r][i]`
    pub entries: Vec<Vec<QPoly>>,
}

impl KrawTable {
    pub fn new(m: usize, n: usize) -> Self {
        let entries = (0..=m).map(|r| (0..=m).map(|i| kraw(m, n, r as i64, i)).collect()).collect();
        KrawTable { m, n, entries }
    }

    /// `K_r(i)`, zero for `r` outside `0..=m`.
    pub fn get(&self, r: i64, i: usize) -> QPoly {
        if r < 0 || r as usize > self.m {
            return QPoly::zero();
        }
        self.entries[r as usize][i].clone()
    }
}

fn oriented(m: usize, n: usize) -> (usize, usize) {
    (m.min(n), m.max(n))
}

/// Raw profile of the complement from the raw profile of `B` and `|B|`.
///
/// The sum is divided by `q^{|B|}`; a result with negative powers of `q` means
/// the input was not the profile of a board of that size, and is reported as
/// [`Error::NotDivisible`].
pub fn complement_profile(counts: &RankCounts, size_b: usize) -> Result<RankCounts> {
    let raw = counts.to_raw();
    let (m, n) = oriented(raw.m, raw.n);
    let table = KrawTable::new(m, n);
    let mut out = Vec::with_capacity(m + 1);
    for r in 0..=m {
        let mut acc = QPoly::zero();
        for i in 0..=m {
            let mi = raw.entry(i);
            if !mi.is_zero() {
                acc += &(&table.entries[r][i] * &mi);
            }
        }
        out.push(divide_by_q_power(acc, size_b)?);
    }
    Ok(RankCounts::new(raw.m, raw.n, CountKind::Raw, out))
}

fn divide_by_q_power(p: QPoly, k: usize) -> Result<QPoly> {
    let out = p.shifted(-(k as i64));
    if out.is_polynomial() {
        return Ok(out);
    }
    let remainder = out.terms().filter(|(e, _)| *e < 0).map(|(e, c)| QPoly::monomial(c.clone(), e)).sum();
    Err(Error::NotDivisible { remainder })
}

/// The complement transform at a fixed numeric `q`.
pub fn complement_profile_numeric(counts: &FieldCounts, size_b: usize) -> Result<FieldCounts> {
    let (m, n) = oriented(counts.m, counts.n);
    let q = counts.q as i64;
    let table = KrawTable::new(m, n);
    let scale = Pow::pow(&BigInt::from(q), size_b as u32);
    let mut out = Vec::with_capacity(m + 1);
    for r in 0..=m {
        let mut acc = BigInt::zero();
        for i in 0..=m {
            let mi = counts.counts.get(i).cloned().unwrap_or_default();
            if !mi.is_zero() {
                let k = table.entries[r][i].eval_integer(q).expect("K_r(i) is a polynomial");
                acc += k * mi;
            }
        }
        let (quot, rem) = acc.div_rem(&scale);
        if !rem.is_zero() {
            return Err(Error::IdentityFailure(format!(
                "rank {r}: sum not divisible by {q}^{size_b} (remainder {rem})"
            )));
        }
        out.push(quot);
    }
    Ok(FieldCounts { m: counts.m, n: counts.n, q: counts.q, counts: out })
}

/// Full-rank count of the complement:
/// `(-1)^m q^{C(m,2) - |B|} sum_i m_i(B) (q^{n-m+1}; q)_{m-i}`.
pub fn fullrank_complement(counts: &RankCounts, size_b: usize) -> Result<QPoly> {
    let raw = counts.to_raw();
    let (m, n) = oriented(raw.m, raw.n);
    let mut acc = QPoly::zero();
    for i in 0..=m {
        let mi = raw.entry(i);
        if !mi.is_zero() {
            acc += &(&mi * &qpoch((n - m + 1) as i64, m - i));
        }
    }
    if m % 2 == 1 {
        acc = -acc;
    }
    divide_by_q_power(acc.shifted(choose2(m as i64)), size_b)
}

/// Reduced symbolic profile of any board that has the NE property or whose
/// complement has it (the latter through [`complement_profile`]).
pub fn symbolic_profile(b: &Board) -> Result<RankCounts> {
    if b.is_ne_property() {
        return m_ne_all(b);
    }
    let comp = b.complement();
    if comp.is_ne_property() {
        return complement_profile(&m_ne_all(&comp)?.to_raw(), comp.len())?.to_reduced();
    }
    Err(Error::InvalidInput(
        "neither the board nor its complement has the NE property; no symbolic method applies".into(),
    ))
}
