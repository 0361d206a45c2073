//! Laurent polynomials in `q` with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial `sum_i coeffs[i] * q^(valuation + i)`.
///
/// Stored densely. The first and last stored coefficients are nonzero, and the
/// zero polynomial is the unique value with no coefficients and valuation 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    valuation: i64,
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { valuation: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial<T: Into<BigInt>>(c: T, e: i64) -> Self {
        Self::from_coeffs(e, vec![c.into()])
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// Builds `sum_i coeffs[i] q^(valuation+i)` and brings it to canonical form.
    pub fn from_coeffs(valuation: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { valuation, coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from machine integers, lowest power first.
    pub fn from_i64s(valuation: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(valuation, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.valuation = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.valuation == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.valuation + self.coeffs.len() as i64 - 1)
    }

    /// Raw storage: the valuation and the dense coefficient run starting there.
    pub fn raw_parts(&self) -> (i64, &[BigInt]) {
        (self.valuation, &self.coeffs)
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> BigInt {
        let idx = e - self.valuation;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// True when no negative powers of `q` occur.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.valuation >= 0
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        QPoly { valuation: self.valuation + k, coeffs: self.coeffs.clone() }
    }

    pub fn shifted(mut self, k: i64) -> Self {
        if !self.is_zero() {
            self.valuation += k;
        }
        self
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly { valuation: self.valuation, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The substitution `q -> q^{-1}`.
    pub fn invert_variable(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                QPoly { valuation: -d, coeffs }
            }
        }
    }

    /// Evaluates at a rational value of `q` (which must be nonzero when negative
    /// powers are present).
    pub fn eval(&self, q: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from_integer(c.clone());
        }
        acc * rational_pow(q, self.valuation)
    }

    /// Evaluates at an integer `q`; exact rational when negative powers remain.
    pub fn eval_int(&self, q: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(q)))
    }

    /// Evaluates at an integer `q`, returning `None` if the value is not an integer.
    pub fn eval_integer(&self, q: i64) -> Option<BigInt> {
        let v = self.eval_int(q);
        v.is_integer().then(|| v.to_integer())
    }

    /// Sum of all coefficients (the value at `q = 1`).
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// The canonical text form, e.g. `24q^11 - 4q^10 + 2q + 1`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    match e.cmp(&0) {
        Ordering::Equal => BigRational::one(),
        Ordering::Greater => num_traits::pow(q.clone(), e as usize),
        Ordering::Less => num_traits::pow(q.recip(), (-e) as usize),
    }
}

fn add_into(acc: &mut QPoly, other: &QPoly, negate: bool) {
    if other.is_zero() {
        return;
    }
    if acc.is_zero() {
        *acc = if negate { -other.clone() } else { other.clone() };
        return;
    }
    let lo = acc.valuation.min(other.valuation);
    let hi = acc.degree().unwrap().max(other.degree().unwrap());
    if lo < acc.valuation {
        let pad = (acc.valuation - lo) as usize;
        acc.coeffs.splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
        acc.valuation = lo;
    }
    let len = (hi - lo + 1) as usize;
    if acc.coeffs.len() < len {
        acc.coeffs.resize(len, BigInt::zero());
    }
    let off = (other.valuation - lo) as usize;
    for (i, c) in other.coeffs.iter().enumerate() {
        if negate {
            acc.coeffs[off + i] -= c;
        } else {
            acc.coeffs[off + i] += c;
        }
    }
    acc.normalize();
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        add_into(self, rhs, false);
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        add_into(self, rhs, true);
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: QPoly) -> QPoly {
        self += &rhs;
        self
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(mut self, rhs: QPoly) -> QPoly {
        self -= &rhs;
        self
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(self.valuation + rhs.valuation, coeffs)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(mut self) -> QPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -self.clone()
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        let mut acc = QPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        let mut acc = QPoly::one();
        for p in iter {
            acc = &acc * &p;
        }
        acc
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::constant(c)
    }
}

impl From<BigInt> for QPoly {
    fn from(c: BigInt) -> Self {
        QPoly::constant(c)
    }
}

/// Divides `p` by `d` in the Laurent polynomial ring over the integers.
///
/// Fails with [`Error::NotDivisible`] (carrying the remainder of the long
/// division) when the quotient is not a Laurent polynomial with integer
/// coefficients.
pub fn exact_div(p: &QPoly, d: &QPoly) -> Result<QPoly> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if p.is_zero() {
        return Ok(QPoly::zero());
    }
    // Both parts have nonzero constant terms once their valuations are stripped,
    // so the Laurent quotient exists iff ordinary division of the stripped parts
    // is exact.
    let num = &p.coeffs;
    let den = &d.coeffs;
    let shift = p.valuation - d.valuation;
    if num.len() < den.len() {
        return Err(Error::NotDivisible { remainder: p.clone() });
    }
    let lead = den.last().unwrap();
    let mut rem: Vec<BigInt> = num.clone();
    let qlen = num.len() - den.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = &rem[k + den.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return Err(Error::NotDivisible {
                remainder: QPoly::from_coeffs(p.valuation, rem),
            });
        }
        for (j, dc) in den.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::NotDivisible { remainder: QPoly::from_coeffs(p.valuation, rem) });
    }
    Ok(QPoly::from_coeffs(shift, quot))
}

fn fmt_term(f: &mut fmt::Formatter<'_>, abs: &BigInt, e: i64) -> fmt::Result {
    let unit = abs.is_one();
    match e {
        0 => write!(f, "{abs}"),
        1 if unit => write!(f, "q"),
        1 => write!(f, "{abs}q"),
        _ if unit => write!(f, "q^{e}"),
        _ => write!(f, "{abs}q^{e}"),
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            fmt_term(f, &c.abs(), e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl FromStr for QPoly {
    type Err = Error;

    /// Parses the canonical text form. Whitespace is ignored, terms may repeat
    /// exponents and come in any order, and `*` between coefficient and `q` is
    /// accepted.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed polynomial: {s:?}"));
        // Whitespace may separate terms and operators but not split a term.
        let mut prev: Option<char> = None;
        let mut gap = false;
        for c in s.chars() {
            if c.is_whitespace() {
                gap = true;
                continue;
            }
            if gap && prev.is_some_and(|p| p.is_ascii_alphanumeric()) && c.is_ascii_alphanumeric() {
                return Err(bad());
            }
            prev = Some(c);
            gap = false;
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let bytes = compact.as_bytes();
        let mut acc = QPoly::zero();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if pos > start {
                compact[start..pos].parse::<BigInt>().map_err(|_| bad())?
            } else {
                BigInt::one()
            };
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b'q' {
                    return Err(bad());
                }
            }
            let mut exp = 0i64;
            if pos < bytes.len() && bytes[pos] == b'q' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let estart = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = compact[estart..pos].parse().map_err(|_| bad())?;
                }
            } else if pos == start {
                return Err(bad());
            }
            acc += &QPoly::monomial(sign * coeff, exp);
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct QPolyJson {
    valuation: i64,
    coeffs: Vec<String>,
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QPolyJson {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = QPolyJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let p = QPoly::from_coeffs(raw.valuation, coeffs);
        // Only canonical encodings are accepted so that the JSON form stays bit-exact.
        if p.valuation != raw.valuation || p.coeffs.len() != raw.coeffs.len() {
            return Err(serde::de::Error::custom("non-canonical polynomial encoding"));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_zero() {
        let z = QPoly::from_i64s(5, &[0, 0]);
        assert_eq!(z, QPoly::zero());
        assert_eq!(z.valuation(), None);
        assert_eq!(&p("q") - &p("q"), QPoly::zero());
    }

    #[test]
    fn trims_both_ends() {
        let x = QPoly::from_i64s(-2, &[0, 3, 0, 1, 0]);
        assert_eq!(x.raw_parts().0, -1);
        assert_eq!(x.degree(), Some(1));
        assert_eq!(x.to_string(), "q + 3q^-1");
    }

    #[test]
    fn text_rendering() {
        assert_eq!(p("1 + q + q^2").to_string(), "q^2 + q + 1");
        assert_eq!(p("-q^2 + 2q - 1").to_string(), "-q^2 + 2q - 1");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(p("24*q^11 - 4q^10").to_string(), "24q^11 - 4q^10");
        assert_eq!(p("1 - q^-1").to_string(), "1 - q^-1");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "q^", "2x", "1 2", "+", "q^a"] {
            assert!(s.parse::<QPoly>().is_err(), "{s:?} parsed");
        }
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(exact_div(&p("q^2 - 1"), &p("q - 1")).unwrap(), p("q + 1"));
        assert!(matches!(
            exact_div(&p("q^2 + 1"), &p("q - 1")),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(exact_div(&p("q^3 + q^2"), &p("q^2")).unwrap(), p("q + 1"));
        assert!(matches!(exact_div(&p("3q"), &p("2")), Err(Error::NotDivisible { .. })));
        assert!(matches!(exact_div(&p("q"), &QPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn invert_variable_round_trip() {
        let x = p("3q^4 - q + 7");
        assert_eq!(x.invert_variable().to_string(), "7 - q^-1 + 3q^-4");
        assert_eq!(x.invert_variable().invert_variable(), x);
    }

    #[test]
    fn json_is_canonical() {
        let x = p("2q^3 - 5");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"valuation":0,"coeffs":["-5","0","0","2"]}"#);
        assert_eq!(serde_json::from_str::<QPoly>(&js).unwrap(), x);
        assert!(serde_json::from_str::<QPoly>(r#"{"valuation":0,"coeffs":["0","1"]}"#).is_err());
        let z = serde_json::to_string(&QPoly::zero()).unwrap();
        assert_eq!(z, r#"{"valuation":0,"coeffs":[]}"#);
    }

    #[test]
    fn eval_with_negative_powers() {
        let x = p("q^-1 + q");
        assert_eq!(x.eval_int(2), BigRational::new(5.into(), 2.into()));
        assert_eq!(x.eval_integer(2), None);
        assert_eq!(p("q^2 - q").eval_integer(3), Some(BigInt::from(6)));
    }
}
