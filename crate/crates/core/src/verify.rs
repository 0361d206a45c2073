//! Executable invariant suites. Each function checks one family of identities
//! exhaustively over a small range and returns [`Error::IdentityFailure`]
//! naming the first failure.

use crate::boards::{ferrers, Board, Orientation, Partition, Perm};
use crate::delcon::{self, complement_profile_kraw, DelconEngine};
use crate::error::{Error, Result};
use crate::exactpoly::{choose2, qbinom, QPoly, TPoly};
use crate::krawtchouk::{
    check_index_shift, check_orthogonality, check_symmetry, check_three_term, complement_profile,
    complement_profile_numeric, kraw_identity_lhs_rhs, symbolic_profile, KrawTable,
};
use crate::qhit::{gr_qhit, hit_partition_sum, hit_poly, m_profile_from_hits, reciprocity_map};
use crate::rookcount::{brute_profile, m_ne_all, v_count, DEFAULT_BUDGET};

fn fail(what: impl Into<String>) -> Error {
    Error::IdentityFailure(what.into())
}

/// `(t; q)_n = sum_k (-1)^k q^{C(k,2)} [n,k]_q t^k`, and
/// `(t; q)_n * sum_k [n+k-1, k]_q t^k = 1` modulo `t^{K+1}`, for `n <= max_n`.
pub fn qbinomial_theorem(max_n: usize) -> Result<()> {
    for n in 0..=max_n {
        let mut prod = TPoly::constant(0, QPoly::one());
        for j in 0..n as i64 {
            prod = prod.mul_linear(&QPoly::one(), &-QPoly::q_pow(j));
        }
        let sum: Vec<QPoly> = (0..=n as i64)
            .map(|k| {
                let t = qbinom(n as i64, k).shifted(choose2(k));
                if k % 2 == 1 {
                    -t
                } else {
                    t
                }
            })
            .collect();
        if prod.padded_coeffs() != sum {
            return Err(fail(format!("q-binomial theorem at n = {n}")));
        }
        let terms = max_n + 1;
        let inv: Vec<QPoly> = (0..terms as i64).map(|k| qbinom(n as i64 + k - 1, k)).collect();
        let inv = if n == 0 { vec![QPoly::one()] } else { inv };
        for d in 0..terms {
            let c: QPoly = (0..=d.min(n)).filter(|&k| d - k < inv.len()).map(|k| &sum[k] * &inv[d - k]).sum();
            let want = if d == 0 { QPoly::one() } else { QPoly::zero() };
            if c != want {
                return Err(fail(format!("inverse q-binomial series at n = {n}, t^{d}")));
            }
        }
    }
    Ok(())
}

/// Orthogonality, symmetry, the three-term recurrence, the index shift and
/// the generating identity for every `1 <= m <= n <= max`.
pub fn krawtchouk_suite(max: usize) -> Result<()> {
    for n in 1..=max {
        for m in 1..=n {
            let t = KrawTable::new(m, n);
            check_orthogonality(&t)?;
            check_symmetry(&t)?;
            check_three_term(&t)?;
            if m >= 2 {
                check_index_shift(&t, &KrawTable::new(m - 1, n - 1))?;
            }
            for i in 0..=m {
                let (lhs, rhs) = kraw_identity_lhs_rhs(m, n, i);
                if lhs != rhs {
                    return Err(fail(format!("generating identity (m, n, i) = ({m}, {n}, {i})")));
                }
            }
        }
    }
    Ok(())
}

/// Corrupts one table entry and requires orthogonality to notice.
pub fn krawtchouk_mutation() -> Result<()> {
    let mut t = KrawTable::new(2, 3);
    t.entries[1][1] = &t.entries[1][1] + &QPoly::one();
    match check_orthogonality(&t) {
        Err(Error::IdentityFailure(_)) => Ok(()),
        _ => Err(fail("orthogonality accepted a corrupted table")),
    }
}

/// Hit numbers of the three 2x2 boards of the standard example.
pub fn negpolyhit() -> Result<()> {
    let p = |s: &str| s.parse::<QPoly>().expect("literal");
    let cases = [
        (Board::full(2, 2), ["0", "0", "q^2 + q"]),
        (Board::from_cells(2, 2, [(1, 1), (2, 1), (2, 2)])?, ["0", "q^2", "q"]),
        (Board::from_cells(2, 2, [(1, 1), (2, 2)])?, ["q^2", "q - 1", "1"]),
    ];
    for (b, want) in cases {
        let h = hit_poly(&symbolic_profile(&b)?)?;
        let want: Vec<QPoly> = want.iter().map(|s| p(s)).collect();
        if h.hits() != want.as_slice() {
            return Err(fail(format!("hits of {:?}: {:?}", b.cells(), h.hits())));
        }
    }
    Ok(())
}

/// For every board in `[m] x [n]` and each `q`: brute force on the board,
/// brute force on the complement pushed through the numeric transform, and the
/// symbolic profile (when one applies) all agree.
pub fn oracle_suite(m: usize, n: usize, qs: &[u64]) -> Result<()> {
    for b in Board::all_in(m, n) {
        let sym = symbolic_profile(&b).ok();
        for &q in qs {
            let direct = brute_profile(&b, q, DEFAULT_BUDGET)?;
            let comp = brute_profile(&b.complement(), q, DEFAULT_BUDGET)?;
            let via = complement_profile_numeric(&comp, m * n - b.len())?;
            if via.counts != direct.counts {
                return Err(fail(format!("transform vs brute force on {:?} at q = {q}", b.cells())));
            }
            if let Some(s) = &sym {
                let vals = s.to_raw().eval(q as i64)?;
                if vals != direct.counts {
                    return Err(fail(format!("symbolic vs brute force on {:?} at q = {q}", b.cells())));
                }
            }
        }
    }
    Ok(())
}

/// Round trip `M -> H -> M`, `sum (q-1)^m H_i = v_m`, and reciprocity both
/// as the complement map and as an involution, on every NE board in `[m] x [n]`.
pub fn hit_suite(m: usize, n: usize) -> Result<()> {
    for b in Board::all_in(m, n).filter(Board::is_ne_property) {
        let prof = m_ne_all(&b)?;
        let h = hit_poly(&prof)?;
        if m_profile_from_hits(&h)? != prof {
            return Err(fail(format!("hit round trip on {:?}", b.cells())));
        }
        if hit_partition_sum(&h) != v_count(m, n, m) {
            return Err(fail(format!("hit partition on {:?}", b.cells())));
        }
        let comp = complement_profile(&prof.to_raw(), b.len())?;
        let hc = hit_poly(&comp)?;
        if reciprocity_map(&h, b.len()) != hc {
            return Err(fail(format!("reciprocity on {:?}", b.cells())));
        }
        if reciprocity_map(&hc, m * n - b.len()) != h {
            return Err(fail(format!("reciprocity involution on {:?}", b.cells())));
        }
    }
    Ok(())
}

/// Dworkin's relation and both hit relations on every NE board of `[m] x [n]`.
pub fn board_delcon_suite(m: usize, n: usize) -> Result<()> {
    for b in Board::all_in(m, n) {
        for c in b.sw_corners() {
            for r in 0..=m.min(n) {
                delcon::delcon_gr(&b, c, r)?;
            }
            if b.is_ne_property() && m <= n {
                delcon::hitpoly_delcon(&b, c)?;
            }
        }
        if b.is_ne_property() && delcon::m_delcon_all(&b)? != m_ne_all(&b)? {
            return Err(fail(format!("reduced recursion on {:?}", b.cells())));
        }
    }
    Ok(())
}

/// Deletion and contraction of diagrams as board operations, on all of `S_n`.
pub fn diagram_moves(n: usize) -> Result<()> {
    Perm::all(n).try_for_each(|w| delcon::check_diagram_moves(&w))
}

/// The reduced-count relation, the complement relation and both hit
/// relations at every corner of every `w` in `S_n`.
pub fn permutation_relations(n: usize) -> Result<()> {
    for w in Perm::all(n) {
        delcon::check_delcon_mw(&w)?;
        delcon::check_delconw(&w)?;
        delcon::check_hitpoly_perm(&w)?;
    }
    Ok(())
}

/// Engine against the Krawtchouk transform of the NE profile on `S_n`, all ranks,
/// and the full-rank path against the general one.
pub fn engine_vs_krawtchouk(n: usize) -> Result<()> {
    let e = DelconEngine::new();
    for w in Perm::all(n) {
        let want = complement_profile_kraw(&w)?;
        if e.m_complement_profile(&w)? != want {
            return Err(fail(format!("engine vs transform at {w}")));
        }
        if e.m_complement_fullrank(&w)? != want[n] {
            return Err(fail(format!("full-rank path at {w}")));
        }
    }
    Ok(())
}

/// Engine at `q` against brute force on the complement, for all of `S_n`.
pub fn engine_vs_brute(n: usize, q: u64) -> Result<()> {
    let e = DelconEngine::new();
    for w in Perm::all(n) {
        let counts = brute_profile(&w.diagram().complement(), q, DEFAULT_BUDGET)?;
        let reduced = counts.reduced()?;
        for (r, want) in reduced.iter().enumerate() {
            let got = e.m_complement(&w, r)?.eval_integer(q as i64).unwrap_or_default();
            if &got != want {
                return Err(fail(format!("engine vs brute force at {w}, r = {r}, q = {q}")));
            }
        }
    }
    Ok(())
}

/// Partitions inside the staircase `(n-1, n-2, ..., 0)`.
pub fn partitions_in_staircase(n: usize) -> Vec<Vec<usize>> {
    fn go(row: usize, n: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if row == n {
            let mut p = cur.clone();
            while p.last() == Some(&0) {
                p.pop();
            }
            out.push(p);
            return;
        }
        let limit = cap.min(n - 1 - row);
        for x in 0..=limit {
            cur.push(x);
            go(row + 1, n, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, usize::MAX, &mut Vec::new(), &mut out);
    out
}

/// `H_i(S_lambda) = q^{C(n,2)} H^GR_i(S_lambda)` and nonnegativity of the
/// Garsia-Remmel hit numbers, for every `lambda` in the staircase, `n <= max_n`.
pub fn gr_comparison(max_n: usize) -> Result<()> {
    for n in 1..=max_n {
        for parts in partitions_in_staircase(n) {
            let lambda = Partition::new(parts.clone(), Orientation::UpperLeft)?;
            let gr = gr_qhit(&lambda, n)?;
            let h = hit_poly(&m_ne_all(&ferrers(&lambda, n, n)?)?)?;
            for (i, g) in gr.iter().enumerate() {
                if g.has_negative_coefficient() || !g.is_polynomial() {
                    return Err(fail(format!("GR hit {i} of {parts:?} is not in N[q]: {g}")));
                }
                if h.hit(i) != g.shift(choose2(n as i64)) {
                    return Err(fail(format!("GR comparison for {parts:?}, n = {n}, i = {i}")));
                }
            }
        }
    }
    Ok(())
}

/// Named check with its outcome.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub ok: bool,
    pub detail: Option<String>,
}

type Check = (&'static str, fn() -> Result<()>);

const QUICK: &[Check] = &[
    ("q-binomial theorem (n <= 6)", || qbinomial_theorem(6)),
    ("Krawtchouk identities (m, n <= 3)", || krawtchouk_suite(3)),
    ("Krawtchouk mutation is detected", krawtchouk_mutation),
    ("2x2 hit numbers", negpolyhit),
    ("oracles on 2x2 boards, q = 2, 3", || oracle_suite(2, 2, &[2, 3])),
    ("hit round trip and reciprocity, 2x3", || hit_suite(2, 3)),
    ("board deletion-contraction, 2x2", || board_delcon_suite(2, 2)),
    ("permutation relations, S_3", || permutation_relations(3)),
    ("engine vs brute force, S_3, q = 2", || engine_vs_brute(3, 2)),
    ("GR comparison, n <= 3", || gr_comparison(3)),
];

const FULL: &[Check] = &[
    ("Krawtchouk identities (m, n <= 4)", || krawtchouk_suite(4)),
    ("oracles on 3x3 boards, q = 2", || oracle_suite(3, 3, &[2])),
    ("hit round trip and reciprocity, 3x3", || hit_suite(3, 3)),
    ("board deletion-contraction, 3x3", || board_delcon_suite(3, 3)),
    ("diagram deletion and contraction, S_6", || diagram_moves(6)),
    ("permutation relations, S_4", || permutation_relations(4)),
    ("engine vs brute force, S_4, q = 2", || engine_vs_brute(4, 2)),
    ("engine vs Krawtchouk, S_5", || engine_vs_krawtchouk(5)),
    ("GR comparison, n <= 4", || gr_comparison(4)),
];

/// Runs the quick suite, plus the longer one when `full` is set.
pub fn run_suites(full: bool) -> Vec<CheckOutcome> {
    let checks = QUICK.iter().chain(if full { FULL } else { &[] });
    checks
        .map(|(name, f)| match f() {
            Ok(()) => CheckOutcome { name, ok: true, detail: None },
            Err(e) => CheckOutcome { name, ok: false, detail: Some(e.to_string()) },
        })
        .collect()
}
