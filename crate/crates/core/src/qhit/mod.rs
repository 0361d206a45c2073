//! q-hit numbers: the hit polynomial of a board and everything derived from it.
//!
//! For `B` inside `[m] x [n]` with `m <= n`,
//! `P(B, q, t) = q^{C(m,2)} sum_i M_i(B, q) [n-i]!/[n-m]! (-1)^i (t; 1/q)_i`
//! and `H_i(B, q)` is the coefficient of `t^i`.

mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::boards::{ferrers, Partition};
use crate::error::{Error, Result};
use crate::exactpoly::{choose2, exact_div, q_minus_one_pow, qbinom, qfact, qint_product, QPoly, TPoly};
use crate::krawtchouk::fullrank_complement;
use crate::rookcount::{gr_qrook_all, FieldCounts, RankCounts};

pub use series::{f_infty_from_hits, f_infty_series, f_k, f_k_from_profile};

/// Hit numbers `H_0..H_m` of a board together with the assembled polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitProfile {
    pub m: usize,
    pub n: usize,
    hits: Vec<QPoly>,
    poly: TPoly,
}

impl HitProfile {
    pub fn from_hits(m: usize, n: usize, mut hits: Vec<QPoly>) -> Result<Self> {
        hits.resize(m + 1, QPoly::zero());
        let poly = TPoly::new(m, hits.clone())?;
        Ok(HitProfile { m, n, hits, poly })
    }

    pub fn hits(&self) -> &[QPoly] {
        &self.hits
    }

    pub fn hit(&self, i: usize) -> QPoly {
        self.hits.get(i).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn poly(&self) -> &TPoly {
        &self.poly
    }

    /// Values at an integer `q`, as rationals (negative powers may remain).
    pub fn eval(&self, q: i64) -> Vec<BigRational> {
        self.hits.iter().map(|h| h.eval_int(q)).collect()
    }
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    if m > n {
        return Err(Error::InvalidInput(format!("q-hit numbers need m <= n, got {m}x{n}")));
    }
    Ok(())
}

/// `[n-i]!_q / [n-m]!_q` as the product `[n-m+1]_q ... [n-i]_q`.
fn fact_ratio(n: usize, m: usize, i: usize) -> QPoly {
    qint_product(n - m + 1, n - i)
}

/// The q-hit polynomial from a reduced profile `M_0..M_m`.
pub fn hit_poly(mprofile: &RankCounts) -> Result<HitProfile> {
    let reduced = mprofile.to_reduced()?;
    let (m, n) = (reduced.m, reduced.n);
    check_shape(m, n)?;
    let mut acc = TPoly::zero(m);
    for i in 0..=m {
        let mi = reduced.entry(i);
        if mi.is_zero() {
            continue;
        }
        let mut c = &mi * &fact_ratio(n, m, i);
        if i % 2 == 1 {
            c = -c;
        }
        acc = &acc + &TPoly::pochhammer_t_inv(i).scale(&c);
    }
    let acc = acc.scale(&QPoly::q_pow(choose2(m as i64))).with_bound(m)?;
    Ok(HitProfile { m, n, hits: acc.padded_coeffs(), poly: acc })
}

/// `H_k = q^{C(k+1,2) + C(m,2)} sum_{i>=k} M_i [n-i]!/[n-m]! [i,k]_q (-1)^{i+k} q^{-ik}`.
pub fn hits_from_m(mprofile: &RankCounts, k: usize) -> Result<QPoly> {
    let reduced = mprofile.to_reduced()?;
    let (m, n) = (reduced.m, reduced.n);
    check_shape(m, n)?;
    let mut acc = QPoly::zero();
    for i in k..=m {
        let mut term = &(&reduced.entry(i) * &fact_ratio(n, m, i)) * &qbinom(i as i64, k as i64);
        term = term.shifted(-((i * k) as i64));
        if (i + k) % 2 == 1 {
            term = -term;
        }
        acc += &term;
    }
    Ok(acc.shifted(choose2(k as i64 + 1) + choose2(m as i64)))
}

/// `M_k = q^{C(k,2) - C(m,2)} [n-m]!/[n-k]! sum_{i>=k} H_i [i,k]_q`.
///
/// The factorial ratio is a division; it fails for an inconsistent profile.
pub fn m_from_hits(hits: &HitProfile, k: usize) -> Result<QPoly> {
    let (m, n) = (hits.m, hits.n);
    let sum: QPoly = (k..=m).map(|i| &hits.hit(i) * &qbinom(i as i64, k as i64)).sum();
    let q = exact_div(&sum, &fact_ratio(n, m, k))?;
    Ok(q.shifted(choose2(k as i64) - choose2(m as i64)))
}

/// Reduced profile recovered from the hit numbers.
pub fn m_profile_from_hits(hits: &HitProfile) -> Result<RankCounts> {
    let entries = (0..=hits.m).map(|k| m_from_hits(hits, k)).collect::<Result<Vec<_>>>()?;
    Ok(RankCounts::new(hits.m, hits.n, crate::rookcount::CountKind::Reduced, entries))
}

/// Hit profile of the complement: `H_{m-i}(complement) = q^{in - |B|} H_i(B)`.
pub fn reciprocity_map(hits: &HitProfile, size_b: usize) -> HitProfile {
    let (m, n) = (hits.m, hits.n);
    let mut out = vec![QPoly::zero(); m + 1];
    for i in 0..=m {
        out[m - i] = hits.hit(i).shifted((i * n) as i64 - size_b as i64);
    }
    HitProfile::from_hits(m, n, out).expect("degree m")
}

/// `H_0(B)` computed as `q^{|B|} M_m(complement)` and as the alternating sum
/// `q^{C(m,2)} sum_i (-1)^i [n-i]!/[n-m]! M_i`; the two must agree.
pub fn h0(mprofile: &RankCounts, size_b: usize) -> Result<QPoly> {
    let reduced = mprofile.to_reduced()?;
    let (m, n) = (reduced.m, reduced.n);
    check_shape(m, n)?;
    let top = fullrank_complement(&reduced, size_b)?;
    let via_complement = exact_div(&top, &q_minus_one_pow(m))?.shifted(size_b as i64);
    let mut alt = QPoly::zero();
    for i in 0..=m {
        let term = &reduced.entry(i) * &fact_ratio(n, m, i);
        if i % 2 == 1 {
            alt -= &term;
        } else {
            alt += &term;
        }
    }
    let alt = alt.shifted(choose2(m as i64));
    if alt != via_complement {
        return Err(Error::IdentityFailure(format!(
            "H_0 disagrees: {via_complement} via the complement, {alt} by inclusion-exclusion"
        )));
    }
    Ok(alt)
}

/// Garsia-Remmel q-hit numbers of a Ferrers board in `[n] x [n]`:
/// `sum_i H^GR_i t^i = sum_i R^NE_i [n-i]!_q prod_{k=n-i+1}^{n} (t - q^k)`.
///
/// A negative coefficient would contradict their positivity theorem and is
/// reported as an internal error.
pub fn gr_qhit(lambda: &Partition, n: usize) -> Result<Vec<QPoly>> {
    let board = ferrers(lambda, n, n)?;
    if !board.is_ne_property() {
        return Err(Error::NotNe);
    }
    let r = gr_qrook_all(&board);
    let mut acc = TPoly::zero(n);
    for (i, ri) in r.iter().enumerate() {
        let mut term = TPoly::constant(0, ri * &qfact(n - i));
        for k in n - i + 1..=n {
            term = term.mul_linear(&-QPoly::q_pow(k as i64), &QPoly::one());
        }
        acc = &acc + &term;
    }
    let out = acc.with_bound(n)?.padded_coeffs();
    if let Some((i, h)) = out.iter().enumerate().find(|(_, h)| h.has_negative_coefficient()) {
        return Err(Error::IdentityFailure(format!("H^GR_{i} = {h} has a negative coefficient")));
    }
    Ok(out)
}

/// Hit numbers at a fixed `q` from numeric reduced counts `M_0..M_m`.
///
/// Uses the basis `C_r = q^{C(m,2)} [n-r]!/[n-m]! (-1)^r (t; 1/q)_r`, which does
/// not depend on the board, so no symbolic profile is needed.
pub fn hits_numeric(reduced: &[BigInt], m: usize, n: usize, q: u64) -> Result<Vec<BigRational>> {
    check_shape(m, n)?;
    let qr = BigRational::from_integer(BigInt::from(q));
    let mut out = vec![BigRational::zero(); m + 1];
    for (r, mr) in reduced.iter().enumerate().take(m + 1) {
        if mr.is_zero() {
            continue;
        }
        let mut c = fact_ratio(n, m, r).shifted(choose2(m as i64));
        if r % 2 == 1 {
            c = -c;
        }
        let basis = TPoly::pochhammer_t_inv(r).scale(&c);
        let mr = BigRational::from_integer(mr.clone());
        for (i, coeff) in basis.eval_q(&qr).into_iter().enumerate() {
            out[i] += &mr * coeff;
        }
    }
    Ok(out)
}

/// Numeric hit numbers of a brute-forced profile; every value must be an integer.
pub fn hits_from_field_counts(counts: &FieldCounts) -> Result<Vec<BigInt>> {
    let reduced = counts.reduced()?;
    let hits = hits_numeric(&reduced, counts.m, counts.n, counts.q)?;
    hits.into_iter()
        .enumerate()
        .map(|(i, h)| {
            if h.is_integer() {
                Ok(h.to_integer())
            } else {
                Err(Error::IdentityFailure(format!("H_{i} = {h} is not an integer at q = {}", counts.q)))
            }
        })
        .collect()
}

/// `(q - 1)^m sum_i H_i`, which should be `v_m`.
pub fn hit_partition_sum(hits: &HitProfile) -> QPoly {
    let s: QPoly = hits.hits.iter().cloned().sum();
    &s * &q_minus_one_pow(hits.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boards::{diagonal, Board, Orientation};
    use crate::rookcount::{m_ne_all, v_count, CountKind};

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    fn reduced(m: usize, n: usize, v: &[&str]) -> RankCounts {
        RankCounts::new(m, n, CountKind::Reduced, v.iter().map(|s| p(s)).collect())
    }

    #[test]
    fn two_by_two_examples() {
        let b1 = reduced(2, 2, &["1", "q^2 + 2q + 1", "q^2 + q"]);
        assert_eq!(hit_poly(&b1).unwrap().hits(), &[p("0"), p("0"), p("q^2 + q")]);
        let b2 = reduced(2, 2, &["1", "2q + 1", "q"]);
        assert_eq!(hit_poly(&b2).unwrap().hits(), &[p("0"), p("q^2"), p("q")]);
        let b3 = reduced(2, 2, &["1", "2", "1"]);
        assert_eq!(hit_poly(&b3).unwrap().hits(), &[p("q^2"), p("q - 1"), p("1")]);
        assert_eq!(h0(&b3, 2).unwrap(), p("q^2"));
        assert!(h0(&b1, 4).unwrap().is_zero());
    }

    #[test]
    fn closed_forms_and_round_trip() {
        for b in Board::all_in(3, 3).filter(Board::is_ne_property) {
            let m = m_ne_all(&b).unwrap();
            let h = hit_poly(&m).unwrap();
            for k in 0..=3 {
                assert_eq!(hits_from_m(&m, k).unwrap(), h.hit(k));
            }
            assert_eq!(m_profile_from_hits(&h).unwrap(), m);
            assert_eq!(h.hit(3), m.entry(3));
            assert_eq!(hit_partition_sum(&h), v_count(3, 3, 3));
        }
    }

    #[test]
    fn reciprocity_is_an_involution() {
        let b3 = reduced(2, 2, &["1", "2", "1"]);
        let h = hit_poly(&b3).unwrap();
        let c = reciprocity_map(&h, 2);
        assert_eq!(reciprocity_map(&c, 2), h);
        let empty = hit_poly(&reduced(2, 3, &["1"])).unwrap();
        let full = reciprocity_map(&empty, 0);
        assert!(full.hit(0).is_zero() && full.hit(1).is_zero() && !full.hit(2).is_zero());
    }

    #[test]
    fn gr_examples() {
        let full = Partition::new(vec![3, 3, 3], Orientation::UpperLeft).unwrap();
        let h = gr_qhit(&full, 3).unwrap();
        assert!(h[..3].iter().all(QPoly::is_zero) && !h[3].is_zero());
        let stair = Partition::staircase(2, Orientation::UpperLeft);
        let s: QPoly = gr_qhit(&stair, 3).unwrap().into_iter().sum();
        assert_eq!(s, qfact(3));
    }

    #[test]
    fn numeric_hits_match_symbolic() {
        let m = m_ne_all(&diagonal(3)).unwrap();
        let h = hit_poly(&m).unwrap();
        for q in [2u64, 3, 5] {
            let vals: Vec<BigInt> = m.eval(q as i64).unwrap();
            let num = hits_numeric(&vals, 3, 3, q).unwrap();
            assert_eq!(num, h.eval(q as i64));
        }
    }
}
