//! Polynomials in `t` whose coefficients are Laurent polynomials in `q`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// `sum_i coeffs[i] t^i` with an explicit degree bound `m`.
///
/// The bound is kept even when the top coefficients vanish, because the
/// reciprocal transform `t -> q^n / t` needs it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TPoly {
    tdeg_bound: usize,
    tcoeffs: Vec<QPoly>,
}

impl TPoly {
    pub fn zero(bound: usize) -> Self {
        TPoly { tdeg_bound: bound, tcoeffs: Vec::new() }
    }

    pub fn constant(bound: usize, c: QPoly) -> Self {
        Self::trimmed(bound, vec![c])
    }

    /// Fails with [`Error::DegreeOverflow`] if a nonzero coefficient lies above the bound.
    pub fn new(bound: usize, coeffs: Vec<QPoly>) -> Result<Self> {
        let p = Self::trimmed(usize::MAX, coeffs);
        if p.tcoeffs.len() > bound + 1 {
            return Err(Error::DegreeOverflow { degree: p.tcoeffs.len() - 1, bound });
        }
        Ok(TPoly { tdeg_bound: bound, ..p })
    }

    fn trimmed(bound: usize, mut coeffs: Vec<QPoly>) -> Self {
        while coeffs.last().is_some_and(QPoly::is_zero) {
            coeffs.pop();
        }
        TPoly { tdeg_bound: bound, tcoeffs: coeffs }
    }

    /// `t^k`.
    pub fn t_pow(bound: usize, k: usize) -> Self {
        let mut c = vec![QPoly::zero(); k + 1];
        c[k] = QPoly::one();
        Self::trimmed(bound.max(k), c)
    }

    /// `(t; q^{-1})_k = prod_{j<k} (1 - t q^{-j})`, with bound `k`.
    pub fn pochhammer_t_inv(k: usize) -> Self {
        let mut acc = TPoly::constant(0, QPoly::one());
        for j in 0..k as i64 {
            acc = acc.mul_linear(&QPoly::one(), &-QPoly::q_pow(-j));
        }
        acc
    }

    pub fn bound(&self) -> usize {
        self.tdeg_bound
    }

    pub fn with_bound(mut self, bound: usize) -> Result<Self> {
        if self.tcoeffs.len() > bound + 1 {
            return Err(Error::DegreeOverflow { degree: self.tcoeffs.len() - 1, bound });
        }
        self.tdeg_bound = bound;
        Ok(self)
    }

    /// Actual degree in `t`, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.tcoeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.tcoeffs.is_empty()
    }

    /// Coefficient of `t^i` (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> QPoly {
        self.tcoeffs.get(i).cloned().unwrap_or_else(QPoly::zero)
    }

    /// Coefficients `t^0 ..= t^bound`, padded with zeros.
    pub fn padded_coeffs(&self) -> Vec<QPoly> {
        (0..=self.tdeg_bound).map(|i| self.coeff(i)).collect()
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.tcoeffs
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &QPoly) -> Self {
        Self::trimmed(self.tdeg_bound, self.tcoeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `(a + b t)`, raising the bound by one.
    pub fn mul_linear(&self, a: &QPoly, b: &QPoly) -> Self {
        let mut out = vec![QPoly::zero(); self.tcoeffs.len() + 1];
        for (i, c) in self.tcoeffs.iter().enumerate() {
            out[i] += &(c * a);
            out[i + 1] += &(c * b);
        }
        Self::trimmed(self.tdeg_bound + 1, out)
    }

    /// The substitution `t -> q^k t`.
    pub fn scale_variable(&self, k: i64) -> Self {
        Self::trimmed(
            self.tdeg_bound,
            self.tcoeffs.iter().enumerate().map(|(i, c)| c.shift(k * i as i64)).collect(),
        )
    }

    /// `t^m * P(q^n / t)`: coefficient `i` of the input becomes coefficient
    /// `m - i` of the output, multiplied by `q^{n i}`.
    pub fn shift_reciprocal(&self, n: i64, m: usize) -> Result<Self> {
        if let Some(d) = self.degree() {
            if d > m {
                return Err(Error::DegreeOverflow { degree: d, bound: m });
            }
        }
        let mut out = vec![QPoly::zero(); m + 1];
        for (i, c) in self.tcoeffs.iter().enumerate() {
            out[m - i] = c.shift(n * i as i64);
        }
        Ok(Self::trimmed(m, out))
    }

    /// Evaluates every coefficient at a rational `q`.
    pub fn eval_q(&self, q: &BigRational) -> Vec<BigRational> {
        self.padded_coeffs().iter().map(|c| c.eval(q)).collect()
    }

    /// Value at `t = x` for a polynomial `x` in `q`.
    pub fn eval_t(&self, x: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.tcoeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

impl Add<&TPoly> for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let len = self.tcoeffs.len().max(rhs.tcoeffs.len());
        let c = (0..len).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        TPoly::trimmed(self.tdeg_bound.max(rhs.tdeg_bound), c)
    }
}

impl Sub<&TPoly> for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let len = self.tcoeffs.len().max(rhs.tcoeffs.len());
        let c = (0..len).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        TPoly::trimmed(self.tdeg_bound.max(rhs.tdeg_bound), c)
    }
}

impl Mul<&TPoly> for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        let bound = self.tdeg_bound + rhs.tdeg_bound;
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero(bound);
        }
        let mut out = vec![QPoly::zero(); self.tcoeffs.len() + rhs.tcoeffs.len() - 1];
        for (i, a) in self.tcoeffs.iter().enumerate() {
            for (j, b) in rhs.tcoeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        TPoly::trimmed(bound, out)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.tcoeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}
