//! Memoized evaluation of `M_r(complement of I_w, q)` for permutations `w`.
//!
//! At a SW corner `(i, w_j)` with `w' = w (i j)` and `v` the contraction,
//!
//! ```text
//! q M_r(~I_w) = M_r(~I_w') + q^r (q - 1) M_r(~I_v) - q^{r-1} M_{r-1}(~I_v)
//! ```
//!
//! Deletion lowers the coinversion count and contraction lowers `n`, so the
//! recursion bottoms out at decreasing words, whose complement is the full
//! square. The right side is computed first and then divided by `q`; a
//! nonzero constant term would contradict polynomiality and is reported as
//! [`Error::NotDivisible`].

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::memo::{Coeffs, MemoKey, MemoStore};
use crate::boards::Perm;
use crate::error::{Error, Result};
use crate::exactpoly::{exact_div, q_minus_one_pow, QPoly};
use crate::rookcount::v_count;

/// The smaller (lexicographically) of `w` and the permutation whose diagram is
/// the anti-diagonal reflection of `I_w`. Both complements have the same rank
/// counts, so either may stand for the other in the memo.
pub fn canonicalize(w: &Perm) -> Perm {
    let partner = w.antitranspose_partner();
    if partner.word() < w.word() {
        partner
    } else {
        w.clone()
    }
}

/// A SW corner of `I_w` given by positions `(i, j)`, with its two children.
#[derive(Clone, Debug)]
pub struct Split {
    pub i: usize,
    pub j: usize,
    pub deleted: Perm,
    pub contracted: Perm,
}

/// The corner whose contraction has the fewest coinversions, ties broken by
/// the smallest row. `None` for decreasing words.
pub fn choose_corner(w: &Perm) -> Option<Split> {
    w.corner_positions()
        .into_iter()
        .map(|(i, j)| (i, j, w.contract_positions(i, j)))
        .min_by_key(|(i, _, v)| (v.coinversions(), *i))
        .map(|(i, j, contracted)| Split { i, j, deleted: w.swap_positions(i, j), contracted })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    pub memo: bool,
    pub canonicalize: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { memo: true, canonicalize: true }
    }
}

/// The recursion together with its cache.
#[derive(Default)]
pub struct DelconEngine {
    memo: MemoStore,
    options: EngineOptions,
}

impl DelconEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_options(options: EngineOptions) -> Self {
        DelconEngine { memo: MemoStore::new(), options }
    }

    pub fn memo(&self) -> &MemoStore {
        &self.memo
    }

    /// `M_r(complement of I_w, q)`.
    pub fn m_complement(&self, w: &Perm, r: usize) -> Result<QPoly> {
        Ok(to_qpoly(&self.coeffs(w, r)?))
    }

    /// `M_0 .. M_n` of the complement of `I_w`.
    pub fn m_complement_profile(&self, w: &Perm) -> Result<Vec<QPoly>> {
        (0..=w.len()).map(|r| self.m_complement(w, r)).collect()
    }

    /// `M_n(complement of I_w, q)` through the two-term relation
    /// `q M_n(~I_w) = M_n(~I_w') - q^{n-1} M_{n-1}(~I_v)`.
    pub fn m_complement_fullrank(&self, w: &Perm) -> Result<QPoly> {
        Ok(to_qpoly(&self.fullrank(w)?))
    }

    fn fullrank(&self, w: &Perm) -> Result<Coeffs> {
        let n = w.len();
        self.cached(w, n, || match choose_corner(w) {
            None => base(n, n),
            Some(s) => {
                let del = self.fullrank(&s.deleted)?;
                let con = self.fullrank(&s.contracted)?;
                let mut acc = Acc::from(&del);
                acc.add_shifted(&con, n - 1, -1)?;
                acc.divide_by_q()
            }
        })
    }

    pub(crate) fn coeffs(&self, w: &Perm, r: usize) -> Result<Coeffs> {
        let n = w.len();
        if r > n {
            return Ok(Vec::new().into());
        }
        if r == 0 {
            return Ok(vec![1].into());
        }
        self.cached(w, r, || match choose_corner(w) {
            None => base(n, r),
            Some(s) => {
                let del = self.coeffs(&s.deleted, r)?;
                let con_r = self.coeffs(&s.contracted, r)?;
                let con_rm1 = self.coeffs(&s.contracted, r - 1)?;
                combine(&del, &con_r, &con_rm1, r)
            }
        })
    }

    fn cached(&self, w: &Perm, r: usize, compute: impl FnOnce() -> Result<Coeffs>) -> Result<Coeffs> {
        if !self.options.memo {
            return compute();
        }
        let key = if self.options.canonicalize { MemoKey::new(&canonicalize(w), r) } else { MemoKey::new(w, r) };
        if let Some(v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = compute()?;
        Ok(self.memo.insert(key, v))
    }

    /// Visits every `w` in `S_n` with the values at `ranks`, level by level
    /// in increasing coinversion count. Only two levels of `S_n` are held at
    /// a time; smaller permutations go through the memo. Stops after `limit`
    /// permutations, if given, and returns how many were visited.
    ///
    /// Work inside a level runs on the current rayon pool; the visit order is
    /// fixed (levels, then increasing packed code).
    pub fn scan_levels(
        &self,
        n: usize,
        ranks: &[usize],
        limit: Option<u64>,
        mut visit: impl FnMut(&Perm, &[Coeffs]),
    ) -> Result<u64> {
        if ranks.iter().any(|&r| r > n) {
            return Err(Error::InvalidInput(format!("rank exceeds {n}")));
        }
        let max_level = n * n.saturating_sub(1) / 2;
        let mut levels: Vec<Vec<u64>> = vec![Vec::new(); max_level + 1];
        for w in Perm::all(n) {
            levels[w.coinversions()].push(w.pack());
        }
        let mut visited = 0u64;
        let mut prev: HashMap<u64, Vec<Coeffs>> = HashMap::new();
        for level in levels.iter_mut() {
            level.sort_unstable();
            let rows: Vec<(u64, Vec<Coeffs>)> = level
                .par_iter()
                .map(|&code| {
                    let w = Perm::unpack(code, n);
                    let vals = match choose_corner(&w) {
                        None => ranks.iter().map(|&r| if r == 0 { Ok(vec![1].into()) } else { base(n, r) }).collect(),
                        Some(s) => {
                            let del = &prev[&s.deleted.pack()];
                            ranks
                                .iter()
                                .zip(del)
                                .map(|(&r, d)| {
                                    if r == 0 {
                                        return Ok(d.clone());
                                    }
                                    let con_r = self.coeffs(&s.contracted, r)?;
                                    let con_rm1 = self.coeffs(&s.contracted, r - 1)?;
                                    combine(d, &con_r, &con_rm1, r)
                                })
                                .collect::<Result<Vec<_>>>()
                        }
                    };
                    vals.map(|v| (code, v))
                })
                .collect::<Result<_>>()?;
            for (code, vals) in &rows {
                if limit.is_some_and(|l| visited >= l) {
                    return Ok(visited);
                }
                visit(&Perm::unpack(*code, n), vals);
                visited += 1;
            }
            prev = rows.into_iter().collect();
        }
        Ok(visited)
    }
}

/// `M_r` of the full `n x n` square, `v_r / (q-1)^r`.
fn base(n: usize, r: usize) -> Result<Coeffs> {
    from_qpoly(&exact_div(&v_count(n, n, r), &q_minus_one_pow(r))?)
}

/// `(del + q^r (q-1) con_r - q^{r-1} con_{r-1}) / q`.
fn combine(del: &[i64], con_r: &[i64], con_rm1: &[i64], r: usize) -> Result<Coeffs> {
    let mut acc = Acc::from(del);
    acc.add_shifted(con_r, r + 1, 1)?;
    acc.add_shifted(con_r, r, -1)?;
    acc.add_shifted(con_rm1, r - 1, -1)?;
    acc.divide_by_q()
}

struct Acc(Vec<i64>);

impl Acc {
    fn from(c: &[i64]) -> Self {
        Acc(c.to_vec())
    }

    /// `self += sign * q^shift * c`.
    fn add_shifted(&mut self, c: &[i64], shift: usize, sign: i64) -> Result<()> {
        if c.is_empty() {
            return Ok(());
        }
        if self.0.len() < c.len() + shift {
            self.0.resize(c.len() + shift, 0);
        }
        for (k, &x) in c.iter().enumerate() {
            let t = x.checked_mul(sign).ok_or(Error::CoefficientOverflow)?;
            self.0[k + shift] = self.0[k + shift].checked_add(t).ok_or(Error::CoefficientOverflow)?;
        }
        Ok(())
    }

    fn divide_by_q(mut self) -> Result<Coeffs> {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        match self.0.first() {
            None => Ok(Vec::new().into()),
            Some(0) => Ok(self.0[1..].into()),
            Some(&c) => Err(Error::NotDivisible { remainder: QPoly::constant(c) }),
        }
    }
}

pub(crate) fn to_qpoly(c: &[i64]) -> QPoly {
    QPoly::from_coeffs(0, c.iter().map(|&x| BigInt::from(x)).collect())
}

pub(crate) fn from_qpoly(p: &QPoly) -> Result<Coeffs> {
    if p.is_zero() {
        return Ok(Vec::new().into());
    }
    if !p.is_polynomial() {
        return Err(Error::NotPolynomial(p.clone()));
    }
    let d = p.degree().unwrap_or(0);
    (0..=d).map(|e| p.coeff(e).to_i64().ok_or(Error::CoefficientOverflow)).collect::<Result<Vec<_>>>().map(Arc::from)
}
