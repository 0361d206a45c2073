//! Rank profiles and the closed forms used as cross-checks.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{binom, exact_div, q_minus_one_pow, qbinom, QPoly};

/// Whether entries are reduced (`M_r`) or raw (`m_r = (q-1)^r M_r`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountKind {
    Reduced,
    Raw,
}

/// Symbolic rank profile of a board in `[m] x [n]`, indexed `0..=min(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCounts {
    pub m: usize,
    pub n: usize,
    pub kind: CountKind,
    entries: Vec<QPoly>,
}

impl RankCounts {
    /// Pads or truncates `entries` to length `min(m, n) + 1`.
    pub fn new(m: usize, n: usize, kind: CountKind, mut entries: Vec<QPoly>) -> Self {
        entries.resize(m.min(n) + 1, QPoly::zero());
        RankCounts { m, n, kind, entries }
    }

    pub fn entries(&self) -> &[QPoly] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<QPoly> {
        self.entries
    }

    /// Entry `r`, zero beyond the top rank.
    pub fn entry(&self, r: usize) -> QPoly {
        self.entries.get(r).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn to_raw(&self) -> RankCounts {
        match self.kind {
            CountKind::Raw => self.clone(),
            CountKind::Reduced => RankCounts {
                kind: CountKind::Raw,
                entries: self.entries.iter().enumerate().map(|(r, p)| p * &q_minus_one_pow(r)).collect(),
                ..*self
            },
        }
    }

    /// Divides raw counts by `(q-1)^r`; fails if a division is inexact.
    pub fn to_reduced(&self) -> Result<RankCounts> {
        match self.kind {
            CountKind::Reduced => Ok(self.clone()),
            CountKind::Raw => Ok(RankCounts {
                kind: CountKind::Reduced,
                entries: self
                    .entries
                    .iter()
                    .enumerate()
                    .map(|(r, p)| exact_div(p, &q_minus_one_pow(r)))
                    .collect::<Result<_>>()?,
                ..*self
            }),
        }
    }

    /// Values at an integer `q`; fails if some entry is not an integer there.
    pub fn eval(&self, q: i64) -> Result<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|p| {
                p.eval_integer(q)
                    .ok_or_else(|| Error::InvalidInput(format!("{p} is not integral at q = {q}")))
            })
            .collect()
    }
}

/// Number of `m x n` matrices of rank `k`: `[m choose k]_q prod_{i<k} (q^n - q^i)`.
pub fn v_count(m: usize, n: usize, k: usize) -> QPoly {
    if k > m.min(n) {
        return QPoly::zero();
    }
    let mut acc = qbinom(m as i64, k as i64);
    for i in 0..k as i64 {
        acc = &acc * &(&QPoly::q_pow(n as i64) - &QPoly::q_pow(i));
    }
    acc
}

/// Profile of the full rectangle, raw.
pub fn full_profile(m: usize, n: usize) -> RankCounts {
    RankCounts::new(m, n, CountKind::Raw, (0..=m.min(n)).map(|k| v_count(m, n, k)).collect())
}

/// The two boards with closed-form matrix counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MenageKind {
    /// Diagonal plus superdiagonal.
    Bidiagonal,
    /// Bidiagonal plus the cell `(n, 1)`.
    Menage,
}

/// Raw count `m_i` of `n x n` matrices of rank `i` supported on the board; `n >= 2`.
pub fn menage_m(kind: MenageKind, n: usize, i: usize) -> Result<QPoly> {
    if n < 2 {
        return Err(Error::InvalidInput("menage closed forms need n >= 2".into()));
    }
    if i > n {
        return Ok(QPoly::zero());
    }
    let (n, i) = (n as i64, i as i64);
    let inner = match kind {
        MenageKind::Bidiagonal => {
            QPoly::monomial(binom(2 * n - 1 - i, i - 1), i - 1)
                + QPoly::monomial(binom(2 * n - 1 - i, i), i)
        }
        MenageKind::Menage => {
            // 2n/(2n-i) binom(2n-i, i) is an integer for 0 <= i <= n.
            let c = binom(2 * n - i, i) * BigInt::from(2 * n) / BigInt::from(2 * n - i);
            let g = if i == n {
                -(QPoly::q() * q_minus_one_pow(n as usize - 1))
            } else if i == n - 1 {
                q_minus_one_pow(n as usize)
            } else {
                QPoly::zero()
            };
            QPoly::monomial(c, i) + g
        }
    };
    Ok(q_minus_one_pow(i as usize) * inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn v_examples() {
        assert_eq!(v_count(2, 2, 2), p("q^2 - 1") * p("q^2 - q"));
        assert_eq!(v_count(2, 2, 0), QPoly::one());
        assert_eq!(v_count(2, 2, 1), p("q - 1") * p("q + 1").pow(2));
        assert_eq!(v_count(2, 2, 1).eval_integer(2).unwrap(), BigInt::from(9));
        assert!(v_count(2, 3, 3).is_zero());
    }

    #[test]
    fn menage_closed_forms() {
        assert_eq!(menage_m(MenageKind::Bidiagonal, 2, 1).unwrap(), p("q - 1") * p("1 + 2q"));
        assert_eq!(menage_m(MenageKind::Menage, 2, 2).unwrap(), p("q - 1").pow(2) * p("q^2 + q"));
        assert_eq!(
            menage_m(MenageKind::Menage, 5, 2).unwrap(),
            p("q - 1").pow(2) * QPoly::monomial(BigInt::from(35), 2)
        );
    }

    #[test]
    fn raw_reduced_round_trip() {
        let raw = full_profile(3, 4);
        let red = raw.to_reduced().unwrap();
        assert_eq!(red.to_raw(), raw);
        assert_eq!(red.entry(1), p("q^2 + q + 1") * p("q^3 + q^2 + q + 1"));
        let bad = RankCounts::new(1, 1, CountKind::Raw, vec![QPoly::one(), QPoly::one()]);
        assert!(bad.to_reduced().is_err());
    }
}
