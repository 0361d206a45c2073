//! q-integers, q-factorials, Gaussian binomials and q-Pochhammer symbols.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::qpoly::{exact_div, QPoly};
use crate::error::{Error, Result};

/// `[k]_q = 1 + q + ... + q^{k-1}`.
pub fn qint(k: usize) -> QPoly {
    QPoly::from_coeffs(0, vec![BigInt::one(); k])
}

/// `[k]!_q`.
pub fn qfact(k: usize) -> QPoly {
    qint_product(1, k)
}

/// `[lo]_q [lo+1]_q ... [hi]_q`, the empty product being 1.
///
/// This is how ratios `[a]!_q / [b]!_q` with `b <= a` are formed without division.
pub fn qint_product(lo: usize, hi: usize) -> QPoly {
    (lo.max(1)..=hi).map(qint).product()
}

/// The Gaussian binomial coefficient; zero outside `0 <= l <= k`.
pub fn qbinom(k: i64, l: i64) -> QPoly {
    if l < 0 || k < 0 || l > k {
        return QPoly::zero();
    }
    let l = l.min(k - l) as usize;
    let k = k as usize;
    let num = qint_product(k - l + 1, k);
    let den = qfact(l);
    exact_div(&num, &den).expect("Gaussian binomial is a polynomial")
}

/// `(q^e; q)_k = prod_{i<k} (1 - q^{e+i})`.
pub fn qpoch(e: i64, k: usize) -> QPoly {
    (0..k as i64).map(|i| &QPoly::one() - &QPoly::q_pow(e + i)).product()
}

/// `(q^e; q^{-1})_k = prod_{i<k} (1 - q^{e-i})`.
pub fn qpoch_inv(e: i64, k: usize) -> QPoly {
    (0..k as i64).map(|i| &QPoly::one() - &QPoly::q_pow(e - i)).product()
}

/// `(q - 1)^k`.
pub fn q_minus_one_pow(k: usize) -> QPoly {
    QPoly::from_i64s(0, &[-1, 1]).pow(k as u32)
}

/// Ordinary binomial coefficient as a big integer; zero outside range.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `binom(k, 2)` for possibly small `k`.
pub fn choose2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Rewrites `p(q)` as a polynomial in `x = q - c`, returning the coefficients
/// of `p(x + c)` in the variable `x` (stored in a [`QPoly`] whose variable is
/// read as `x`).
pub fn shift_variable(p: &QPoly, c: i64) -> Result<QPoly> {
    if !p.is_polynomial() {
        return Err(Error::InvalidInput(format!(
            "cannot shift the variable of a Laurent polynomial with negative powers: {p}"
        )));
    }
    let Some(deg) = p.degree() else {
        return Ok(QPoly::zero());
    };
    // Horner in the new variable: acc <- acc * (x + c) + a_k.
    let x_plus_c = QPoly::from_i64s(0, &[c, 1]);
    let mut acc = QPoly::zero();
    for e in (0..=deg).rev() {
        acc = &(&acc * &x_plus_c) + &QPoly::constant(p.coeff(e));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn qint_examples() {
        assert_eq!(qint(0), QPoly::zero());
        assert_eq!(qint(1), QPoly::one());
        assert_eq!(qint(3), p("1 + q + q^2"));
    }

    #[test]
    fn qfact_examples() {
        assert_eq!(qfact(0), QPoly::one());
        assert_eq!(qfact(2), p("1 + q"));
        assert_eq!(qfact(3), p("1 + 2q + 2q^2 + q^3"));
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(4, 2), p("1 + q + 2q^2 + q^3 + q^4"));
        assert_eq!(qbinom(5, 0), QPoly::one());
        assert_eq!(qbinom(3, 5), QPoly::zero());
        assert_eq!(qbinom(3, -1), QPoly::zero());
    }

    /// The q-Pascal recurrence, computed independently of the product formula.
    fn pascal(k: i64, l: i64) -> QPoly {
        if l < 0 || l > k {
            return QPoly::zero();
        }
        if l == 0 || l == k {
            return QPoly::one();
        }
        &pascal(k - 1, l - 1) + &pascal(k - 1, l).shift(l)
    }

    #[test]
    fn qbinom_matches_pascal_oracle() {
        for k in 0..=9 {
            for l in -1..=k + 1 {
                assert_eq!(qbinom(k, l), pascal(k, l), "k={k} l={l}");
            }
        }
    }

    #[test]
    fn qpoch_examples() {
        assert_eq!(qpoch(1, 2), &p("1 - q") * &p("1 - q^2"));
        assert_eq!(qpoch(0, 1), QPoly::zero());
        assert_eq!(qpoch(-1, 1), p("1 - q^-1"));
        assert_eq!(qpoch(3, 0), QPoly::one());
    }

    #[test]
    fn shift_variable_examples() {
        assert_eq!(shift_variable(&p("q^2"), 1).unwrap(), p("q^2 + 2q + 1"));
        assert_eq!(shift_variable(&p("q - 1"), 1).unwrap(), p("q"));
        assert_eq!(shift_variable(&p("q^2 - 2q + 1"), 1).unwrap(), p("q^2"));
        assert!(shift_variable(&p("q^-1"), 1).is_err());
    }

    #[test]
    fn integer_binomials() {
        assert_eq!(binom(8, 3), BigInt::from(56));
        assert_eq!(binom(3, 4), BigInt::zero());
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
