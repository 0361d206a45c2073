//! Garsia-Remmel q-rook numbers through NE inversions.
//!
//! A rook at `(a, b)` cancels its own cell, the board cells strictly north of
//! it in column `b`, and the board cells strictly east of it in row `a`. Every
//! other board cell is an inversion.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::counts::{CountKind, RankCounts};
use crate::boards::Board;
use crate::error::{Error, Result};
use crate::exactpoly::QPoly;

/// `R^NE_k(B, q)` for `k = 0..=min(m, n)`.
///
/// Rows are processed bottom to top: the cancelled cells in a row depend only on
/// which columns already hold a rook below it and on the rook placed in the row.
pub fn gr_qrook_all(b: &Board) -> Vec<QPoly> {
    let top = b.m().min(b.n());
    // used columns -> by rook count -> coefficient vector in q (index = inversions)
    let mut states: HashMap<u64, Vec<Vec<BigInt>>> = HashMap::new();
    states.insert(0, vec![vec![BigInt::from(1)]]);
    for i in (1..=b.m()).rev() {
        let row = b.row_mask(i);
        let mut next: HashMap<u64, Vec<Vec<BigInt>>> = HashMap::with_capacity(states.len() * 2);
        for (&used, polys) in &states {
            let inv = (row & !used).count_ones() as usize;
            accumulate(next.entry(used).or_default(), polys, 0, inv);
            let mut free = row & !used;
            while free != 0 {
                let bit = free & free.wrapping_neg();
                let east_and_self = !(bit - 1);
                let inv = (row & !used & !east_and_self).count_ones() as usize;
                accumulate(next.entry(used | bit).or_default(), polys, 1, inv);
                free &= free - 1;
            }
        }
        states = next;
    }
    let mut out = vec![QPoly::zero(); top + 1];
    for polys in states.values() {
        for (k, coeffs) in polys.iter().enumerate() {
            out[k] += &QPoly::from_coeffs(0, coeffs.clone());
        }
    }
    out
}

fn accumulate(dst: &mut Vec<Vec<BigInt>>, src: &[Vec<BigInt>], dk: usize, shift: usize) {
    if dst.len() < src.len() + dk {
        dst.resize(src.len() + dk, Vec::new());
    }
    for (k, coeffs) in src.iter().enumerate() {
        let d = &mut dst[k + dk];
        if d.len() < coeffs.len() + shift {
            d.resize(coeffs.len() + shift, BigInt::default());
        }
        for (e, c) in coeffs.iter().enumerate() {
            d[e + shift] += c;
        }
    }
}

/// `R^NE_r(B, q)`; zero when `r` exceeds the largest placement.
pub fn gr_qrook(b: &Board, r: usize) -> QPoly {
    gr_qrook_all(b).get(r).cloned().unwrap_or_else(QPoly::zero)
}

/// Reduced counts of an NE board: `M_r(B, q) = q^{|B| - r} R^NE_r(B, 1/q)`.
pub fn m_ne_all(b: &Board) -> Result<RankCounts> {
    if !b.is_ne_property() {
        return Err(Error::NotNe);
    }
    let size = b.len() as i64;
    let entries = gr_qrook_all(b)
        .into_iter()
        .enumerate()
        .map(|(r, p)| {
            let m = p.invert_variable().shifted(size - r as i64);
            if m.is_polynomial() {
                Ok(m)
            } else {
                Err(Error::NotPolynomial(m))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankCounts::new(b.m(), b.n(), CountKind::Reduced, entries))
}

pub fn m_ne(b: &Board, r: usize) -> Result<QPoly> {
    Ok(m_ne_all(b)?.entry(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn full_two_by_two() {
        let b = Board::full(2, 2);
        assert_eq!(gr_qrook(&b, 1), p("q + 2q^2 + q^3"));
        assert_eq!(gr_qrook(&b, 2), p("1 + q"));
        assert_eq!(gr_qrook(&b, 0), p("q^4"));
        assert!(gr_qrook(&b, 3).is_zero());
        let m = m_ne_all(&b).unwrap();
        assert_eq!(m.entries(), &[p("1"), p("q^2 + 2q + 1"), p("q^2 + q")]);
    }

    #[test]
    fn negpolyhit_boards() {
        // The square minus (1,2) is not NE; minus (2,1) is, with the same counts.
        let b2 = Board::from_cells(2, 2, [(1, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(m_ne_all(&b2).unwrap().entries(), &[p("1"), p("2q + 1"), p("q")]);
        let b3 = crate::boards::diagonal(2);
        assert_eq!(m_ne_all(&b3).unwrap().entries(), &[p("1"), p("2"), p("1")]);
    }

    #[test]
    fn q_one_gives_rook_numbers() {
        for b in Board::all_in(3, 3) {
            let gr = gr_qrook_all(&b);
            let r = super::super::classical_rooks(&b);
            let at_one: Vec<BigInt> = gr.iter().map(QPoly::coefficient_sum).collect();
            assert_eq!(at_one, r);
        }
    }

    #[test]
    fn non_ne_rejected() {
        assert!(matches!(m_ne_all(&crate::boards::menage(3)), Err(Error::NotNe)));
    }
}
