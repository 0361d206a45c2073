//! Closed-form specializations and the positivity checks built on them.

mod scan;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use scan::{pattern_nonheredity_check, scan_negativity, ConjectureReport, NonHeredity, ScanOptions, ScanStats, Violation};

use crate::boards::{fano, Perm};
use crate::delcon::DelconEngine;
use crate::error::{Error, Result};
use crate::exactpoly::{binom, choose2, q_minus_one_pow, qfact, QPoly};
use crate::rookcount::{brute_profile, MenageKind};

/// Number of invertible `n x n` matrices with zero diagonal:
/// `q^{C(n,2) - n} (q-1)^n sum_i (-1)^i C(n,i) [n-i]!_q`.
pub fn derangement_poly(n: usize) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("derangement polynomial needs n >= 1".into()));
    }
    let sum: QPoly = (0..=n)
        .map(|i| {
            let t = qfact(n - i).scale(&binom(n as i64, i as i64));
            if i % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .sum();
    Ok((&sum * &q_minus_one_pow(n)).shifted(choose2(n as i64) - n as i64))
}

/// Raw full-rank count on the complement of the bidiagonal or menage board.
pub fn qmenage(kind: MenageKind, n: usize) -> Result<QPoly> {
    if n < 2 {
        return Err(Error::InvalidInput("menage closed forms need n >= 2".into()));
    }
    let ni = n as i64;
    let mut sum = QPoly::zero();
    for i in 0..=ni {
        let c = match kind {
            MenageKind::Bidiagonal => {
                &QPoly::monomial(binom(2 * ni - 1 - i, i), 1) + &QPoly::constant(binom(2 * ni - 1 - i, i - 1))
            }
            MenageKind::Menage => QPoly::constant(binom(2 * ni - i, i) * BigInt::from(2 * ni) / BigInt::from(2 * ni - i)),
        };
        let mut term = (&c * &qfact((ni - i) as usize)).shifted(i);
        if i % 2 == 1 {
            term = -term;
        }
        sum += &term;
    }
    if kind == MenageKind::Menage {
        sum += &menage_anomaly(n);
    }
    Ok((&sum * &q_minus_one_pow(n)).shifted(choose2(ni) - 2 * ni))
}

/// `(-1)^{n-1} (q-1)^{n-1} (2q - 1)`, the extra term in the menage formula.
pub fn menage_anomaly(n: usize) -> QPoly {
    let t = &q_minus_one_pow(n - 1) * &QPoly::from_i64s(0, &[-1, 2]);
    if n % 2 == 0 {
        -t
    } else {
        t
    }
}

/// Outcome of the Fano board computation at one `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoReport {
    pub q: u64,
    /// Raw count of full-rank matrices supported on the board.
    #[serde(with = "crate::exactpoly::serde_big::single")]
    pub m7: BigInt,
    /// Sum over all ranks, which must be `q^21`.
    #[serde(with = "crate::exactpoly::serde_big::single")]
    pub total: BigInt,
    /// The closed expression at `Z_2 = 0` and `Z_2 = 1`, as raw counts.
    #[serde(with = "crate::exactpoly::serde_big::vec")]
    pub expression: Vec<BigInt>,
    /// The value of `Z_2` that reproduces the count, if exactly one does.
    pub matching_z2: Option<u8>,
}

const STEMBRIDGE: [i64; 12] = [24, 264, 1236, 3260, 5386, 5845, 4236, 2043, 650, 135, 17, 1];

/// `(q-1)^7 (x+1)^3 (x^11 + 17x^10 + ... + 24 - Z_2 x^6)` at `x = q - 1`.
pub fn fano_expression(q: u64, z2: u8) -> BigInt {
    let x = BigInt::from(q) - BigInt::one();
    let mut inner = BigInt::zero();
    for &c in STEMBRIDGE.iter().rev() {
        inner = inner * &x + BigInt::from(c);
    }
    inner -= BigInt::from(z2) * num_traits::pow(x.clone(), 6);
    num_traits::pow(x.clone(), 7) * num_traits::pow(x + 1, 3) * inner
}

/// Brute-force count of full-rank matrices on the Fano board, compared with
/// the closed expression for both values of `Z_2`.
pub fn fano_check(q: u64, budget: u64) -> Result<FanoReport> {
    let counts = brute_profile(&fano(), q, budget)?;
    let m7 = counts.counts.get(7).cloned().unwrap_or_default();
    let expression: Vec<BigInt> = (0..2).map(|z| fano_expression(q, z)).collect();
    let hits: Vec<u8> = (0..2u8).filter(|&z| expression[z as usize] == m7).collect();
    Ok(FanoReport {
        q,
        total: counts.total(),
        m7,
        expression,
        matching_z2: if hits.len() == 1 { Some(hits[0]) } else { None },
    })
}

/// `(2n-1)(2n)(2n-3)(2n-2) ... 3 4 1 2`, whose diagram is `n` diagonal cells.
pub fn family_123(n: usize) -> Perm {
    let word: Vec<usize> = (0..n).rev().flat_map(|k| [2 * k + 1, 2 * k + 2]).collect();
    Perm::from_slice(&word).expect("valid permutation")
}

/// `q^{2n(n-1)} sum_i (-1)^i C(n,i) [2n-i]!_q`.
pub fn family_123_formula(n: usize) -> QPoly {
    let sum: QPoly = (0..=n)
        .map(|i| {
            let t = qfact(2 * n - i).scale(&binom(n as i64, i as i64));
            if i % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .sum();
    sum.shifted(2 * (n * n.saturating_sub(1)) as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub n: usize,
    pub v: String,
    pub poly: QPoly,
    pub nonnegative: bool,
}

/// The closed formula for the full-rank count on the complement of the
/// family member of size `2n`, cross-checked against the engine.
pub fn conj_123_family(n: usize, engine: &DelconEngine) -> Result<FamilyCheck> {
    if n == 0 {
        return Err(Error::InvalidInput("family index starts at 1".into()));
    }
    let v = family_123(n);
    let formula = family_123_formula(n);
    let engine_value = engine.m_complement_fullrank(&v)?;
    if formula != engine_value {
        return Err(Error::IdentityFailure(format!("{v}: formula {formula} vs engine {engine_value}")));
    }
    Ok(FamilyCheck { n, v: v.to_string(), nonnegative: !formula.has_negative_coefficient(), poly: formula })
}

/// Value of a raw polynomial count at an integer `q`, required to be integral.
pub fn eval_count(p: &QPoly, q: i64) -> Result<BigInt> {
    p.eval_integer(q).ok_or_else(|| Error::NotPolynomial(p.clone()))
}

/// `h_0` mod `q - 1` agreement: the reduced count at `q` minus the classical
/// count is divisible by `q - 1`.
pub fn congruent_mod_q_minus_one(reduced_at_q: &BigInt, classical: &BigInt, q: i64) -> bool {
    let d = BigInt::from(q - 1);
    if d.is_one() {
        return true;
    }
    ((reduced_at_q - classical) % d).is_zero()
}
