//! Deletion-contraction on NE boards and on permutation diagrams.
//!
//! Board level: Dworkin's relation for `R^NE_r`, its reduced-count form, and
//! the two q-hit polynomial relations. Permutation level: the same relations
//! with `I_w \ corner = I_{w (i j)}` and `I_w / corner = I_v`, plus the
//! memoized engine for complements of diagrams in [`engine`].

mod engine;
mod memo;

use std::collections::HashMap;

pub use engine::{canonicalize, choose_corner, DelconEngine, EngineOptions, Split};
pub use memo::{Coeffs, MemoKey, MemoStats, MemoStore};

use crate::boards::{Board, Cell, Perm};
use crate::error::{Error, Result};
use crate::exactpoly::{QPoly, TPoly};
use crate::krawtchouk::complement_profile;
use crate::qhit::hit_poly;
use crate::rookcount::{gr_qrook_all, m_ne_all, CountKind, RankCounts};

fn mismatch(what: &str, lhs: &impl std::fmt::Display, rhs: &impl std::fmt::Display) -> Error {
    Error::IdentityFailure(format!("{what}: {lhs} != {rhs}"))
}

fn require_corner(b: &Board, c: Cell) -> Result<()> {
    if b.sw_corners().contains(&c) {
        Ok(())
    } else {
        Err(Error::NotSwCorner(c.0, c.1))
    }
}

/// Checks `R_r(B) = q R_r(B \ c) + R_{r-1}(B / c)` at a SW corner `c`.
pub fn delcon_gr(b: &Board, corner: Cell, r: usize) -> Result<()> {
    require_corner(b, corner)?;
    let lhs = gr_qrook_all(b).get(r).cloned().unwrap_or_default();
    let del = gr_qrook_all(&b.delete_cell(corner)?).get(r).cloned().unwrap_or_default();
    let con = match r {
        0 => QPoly::zero(),
        _ => gr_qrook_all(&b.contract_cell(corner)?).get(r - 1).cloned().unwrap_or_default(),
    };
    let rhs = &del.shifted(1) + &con;
    if lhs != rhs {
        return Err(mismatch(&format!("Dworkin relation at {corner:?}, r = {r}"), &lhs, &rhs));
    }
    Ok(())
}

type BoardKey = (usize, usize, Vec<u64>);

fn key(b: &Board) -> BoardKey {
    (b.m(), b.n(), b.row_masks().to_vec())
}

/// `R^NE_0 .. R^NE_{min(m,n)}` by deletion-contraction at the first SW corner,
/// down to the empty board. Agrees with [`gr_qrook_all`] on every board.
pub fn gr_qrook_delcon(b: &Board) -> Vec<QPoly> {
    fn go(b: &Board, memo: &mut HashMap<BoardKey, Vec<QPoly>>) -> Vec<QPoly> {
        if let Some(v) = memo.get(&key(b)) {
            return v.clone();
        }
        let top = b.m().min(b.n());
        let mut out = vec![QPoly::zero(); top + 1];
        match b.sw_corners().first() {
            None => out[0] = QPoly::one(),
            Some(&c) => {
                let del = go(&b.delete_cell(c).expect("corner is a cell"), memo);
                let con = go(&b.contract_cell(c).expect("corner is a cell"), memo);
                for r in 0..=top {
                    out[r] = del[r].shift(1);
                    if r > 0 {
                        out[r] += &con[r - 1];
                    }
                }
            }
        }
        memo.insert(key(b), out.clone());
        out
    }
    go(b, &mut HashMap::new())
}

/// `M_0 .. M_{min(m,n)}` of an NE board through
/// `M_r(B) = M_r(B \ c) + q^{|B| - |B/c| - 1} M_{r-1}(B / c)`.
pub fn m_delcon_all(b: &Board) -> Result<RankCounts> {
    fn go(b: &Board, memo: &mut HashMap<BoardKey, Vec<QPoly>>) -> Vec<QPoly> {
        if let Some(v) = memo.get(&key(b)) {
            return v.clone();
        }
        let top = b.m().min(b.n());
        let mut out = vec![QPoly::zero(); top + 1];
        match b.sw_corners().first() {
            None => out[0] = QPoly::one(),
            Some(&c) => {
                let con_board = b.contract_cell(c).expect("corner is a cell");
                let del = go(&b.delete_cell(c).expect("corner is a cell"), memo);
                let con = go(&con_board, memo);
                let e = b.len() as i64 - con_board.len() as i64 - 1;
                for r in 0..=top {
                    out[r] = del[r].clone();
                    if r > 0 {
                        out[r] += &con[r - 1].shift(e);
                    }
                }
            }
        }
        memo.insert(key(b), out.clone());
        out
    }
    if !b.is_ne_property() {
        return Err(Error::NotNe);
    }
    let entries = go(b, &mut HashMap::new());
    Ok(RankCounts::new(b.m(), b.n(), CountKind::Reduced, entries))
}

pub fn m_delcon(b: &Board, r: usize) -> Result<QPoly> {
    Ok(m_delcon_all(b)?.entry(r))
}

/// `P(B, q, t)` of an NE board.
fn p_ne(b: &Board) -> Result<TPoly> {
    Ok(hit_poly(&m_ne_all(b)?)?.poly().clone())
}

/// `P(complement of B, q, t)` for an NE board, through the Krawtchouk transform.
fn p_complement(b: &Board) -> Result<TPoly> {
    let comp = complement_profile(&m_ne_all(b)?.to_raw(), b.len())?;
    Ok(hit_poly(&comp)?.poly().clone())
}

/// `q^e (t - 1)` or `q^e (t - q^n)` as a polynomial in `t`.
fn linear(e: i64, root: QPoly) -> TPoly {
    TPoly::new(1, vec![-(&root.shift(e)), QPoly::q_pow(e)]).expect("degree 1")
}

/// Checks both q-hit relations at a SW corner `c` of an NE board `B`:
/// `P(B) = P(B \ c) + q^{m + |B| - |B/c| - 2} (t - 1) P(B / c, t/q)` and
/// `q P(~B) = P(~(B \ c)) - q^{m-1} (t - q^n) P(~(B / c))`.
pub fn hitpoly_delcon(b: &Board, corner: Cell) -> Result<()> {
    require_corner(b, corner)?;
    let (m, n) = (b.m(), b.n());
    let del = b.delete_cell(corner)?;
    let con = b.contract_cell(corner)?;

    let e = (m + b.len()) as i64 - con.len() as i64 - 2;
    let lhs = p_ne(b)?;
    let rhs = &p_ne(&del)? + &(&linear(e, QPoly::one()) * &p_ne(&con)?.scale_variable(-1));
    if lhs.coeffs() != rhs.coeffs() {
        return Err(mismatch(&format!("hit relation at {corner:?}"), &lhs, &rhs));
    }

    let lhs = p_complement(b)?.scale(&QPoly::q());
    let rhs = &p_complement(&del)? - &(&linear(m as i64 - 1, QPoly::q_pow(n as i64)) * &p_complement(&con)?);
    if lhs.coeffs() != rhs.coeffs() {
        return Err(mismatch(&format!("complement hit relation at {corner:?}"), &lhs, &rhs));
    }
    Ok(())
}

/// SW corners of `I_w` as cells `(i, w_j)` together with the position pairs.
fn corners(w: &Perm) -> Vec<(Cell, usize, usize)> {
    w.corner_positions().into_iter().map(|(i, j)| ((i, w.at(j)), i, j)).collect()
}

/// Checks `I_w \ c = I_{w (i j)}` and `I_w / c = I_v` at every SW corner.
pub fn check_diagram_moves(w: &Perm) -> Result<()> {
    let d = w.diagram();
    let board_corners = d.sw_corners();
    let perm_corners: Vec<Cell> = corners(w).into_iter().map(|(c, _, _)| c).collect();
    let mut sorted = perm_corners.clone();
    sorted.sort();
    let mut expected = board_corners.clone();
    expected.sort();
    if sorted != expected {
        return Err(Error::IdentityFailure(format!("{w}: corners {perm_corners:?} vs board {board_corners:?}")));
    }
    for (c, i, j) in corners(w) {
        if d.delete_cell(c)? != w.swap_positions(i, j).diagram() {
            return Err(Error::IdentityFailure(format!("{w}: deletion at {c:?}")));
        }
        if d.contract_cell(c)? != w.contract_positions(i, j).diagram() {
            return Err(Error::IdentityFailure(format!("{w}: contraction at {c:?}")));
        }
    }
    Ok(())
}

/// Checks `M_r(I_w) = M_r(I_{w'}) + q^{n - 2 - l(w) + l(v)} M_{r-1}(I_v)` at every
/// corner and every rank, with `l` the inversion count.
pub fn check_delcon_mw(w: &Perm) -> Result<()> {
    let n = w.len();
    let mw = m_ne_all(&w.diagram())?;
    for (c, i, j) in corners(w) {
        let (wd, v) = (w.swap_positions(i, j), w.contract_positions(i, j));
        let md = m_ne_all(&wd.diagram())?;
        let mv = m_ne_all(&v.diagram())?;
        let e = n as i64 - 2 - w.length() as i64 + v.length() as i64;
        for r in 1..=n {
            let rhs = &md.entry(r) + &mv.entry(r - 1).shift(e);
            if mw.entry(r) != rhs {
                return Err(mismatch(&format!("{w} at {c:?}, r = {r}"), &mw.entry(r), &rhs));
            }
        }
    }
    Ok(())
}

/// Reduced profile of the complement of `I_w` via the Krawtchouk transform of
/// the NE profile; independent of the engine.
pub fn complement_profile_kraw(w: &Perm) -> Result<Vec<QPoly>> {
    let d = w.diagram();
    let comp = complement_profile(&m_ne_all(&d)?.to_raw(), d.len())?.to_reduced()?;
    Ok(comp.into_entries())
}

/// Checks the complement relation
/// `q M_r(~I_w) = M_r(~I_{w'}) + q^r (q-1) M_r(~I_v) - q^{r-1} M_{r-1}(~I_v)`
/// at every corner and rank, with all profiles from the Krawtchouk transform.
pub fn check_delconw(w: &Perm) -> Result<()> {
    let n = w.len();
    let mw = complement_profile_kraw(w)?;
    let at = |v: &[QPoly], r: usize| v.get(r).cloned().unwrap_or_default();
    for (c, i, j) in corners(w) {
        let md = complement_profile_kraw(&w.swap_positions(i, j))?;
        let mv = complement_profile_kraw(&w.contract_positions(i, j))?;
        for r in 1..=n {
            let r_i = r as i64;
            let qm1 = &QPoly::q() - &QPoly::one();
            let rhs = &(&at(&md, r) + &(&at(&mv, r).shift(r_i) * &qm1)) - &at(&mv, r - 1).shift(r_i - 1);
            let lhs = at(&mw, r).shift(1);
            if lhs != rhs {
                return Err(mismatch(&format!("{w} at {c:?}, r = {r}"), &lhs, &rhs));
            }
        }
    }
    Ok(())
}

/// The two permutation forms of the q-hit relations, at every corner:
/// `P(I_w) = P(I_{w'}) + q^{2n - 3 + l(v) - l(w)} (t - 1) P(I_v, t/q)` and
/// `q P(~I_w) = P(~I_{w'}) - q^{n-1} (t - q^n) P(~I_v)`.
pub fn check_hitpoly_perm(w: &Perm) -> Result<()> {
    let n = w.len();
    let p = |u: &Perm| p_ne(&u.diagram());
    let pc = |u: &Perm| p_complement(&u.diagram());
    for (c, i, j) in corners(w) {
        let (wd, v) = (w.swap_positions(i, j), w.contract_positions(i, j));
        let e = 2 * n as i64 - 3 + v.length() as i64 - w.length() as i64;
        let lhs = p(w)?;
        let rhs = &p(&wd)? + &(&linear(e, QPoly::one()) * &p(&v)?.scale_variable(-1));
        if lhs.coeffs() != rhs.coeffs() {
            return Err(mismatch(&format!("{w} hit relation at {c:?}"), &lhs, &rhs));
        }
        let lhs = pc(w)?.scale(&QPoly::q());
        let rhs = &pc(&wd)? - &(&linear(n as i64 - 1, QPoly::q_pow(n as i64)) * &pc(&v)?);
        if lhs.coeffs() != rhs.coeffs() {
            return Err(mismatch(&format!("{w} complement hit relation at {c:?}"), &lhs, &rhs));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn dworkin_on_full_square() {
        let b = Board::full(2, 2);
        for r in 0..=2 {
            delcon_gr(&b, (2, 1), r).unwrap();
        }
        assert!(matches!(delcon_gr(&b, (1, 2), 1), Err(Error::NotSwCorner(1, 2))));
        assert_eq!(gr_qrook_delcon(&b), gr_qrook_all(&b));
    }

    #[test]
    fn m_delcon_small_cases() {
        assert_eq!(m_delcon(&Board::empty(2, 2), 0).unwrap(), QPoly::one());
        assert_eq!(m_delcon(&Board::empty(2, 2), 1).unwrap(), QPoly::zero());
        let d = "3412".parse::<Perm>().unwrap().diagram();
        assert_eq!(m_delcon_all(&d).unwrap(), m_ne_all(&d).unwrap());
        // Full 2x2: M_2 = q^{C(2,2)} [2]!_q = q(1+q).
        assert_eq!(m_delcon(&Board::full(2, 2), 2).unwrap(), p("q + q^2"));
    }

    #[test]
    fn hit_relations_on_one_cell() {
        hitpoly_delcon(&Board::full(1, 1), (1, 1)).unwrap();
    }

    #[test]
    fn non_ne_board_is_rejected() {
        let b = Board::from_cells(2, 2, [(1, 1), (2, 1), (2, 2)]).unwrap();
        assert!(matches!(m_delcon_all(&b), Err(Error::NotNe)));
    }
}
