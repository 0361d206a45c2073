use num_bigint::BigInt;
use qrook::boards::{diagonal, Board};
use qrook::krawtchouk::*;
use qrook::rookcount::*;

#[test]
fn numeric_complement_matches_brute_force_on_all_3x3_boards() {
    for b in Board::all_in(3, 3) {
        for q in [2u64, 3] {
            let here = brute_profile(&b, q, DEFAULT_BUDGET).unwrap();
            let there = brute_profile(&b.complement(), q, DEFAULT_BUDGET).unwrap();
            assert_eq!(complement_profile_numeric(&here, b.len()).unwrap(), there, "{b:?} q={q}");
        }
    }
}

#[test]
fn symbolic_complement_of_ne_boards() {
    for b in Board::all_in(2, 3).chain(Board::all_in(3, 3)).filter(Board::is_ne_property) {
        let m = m_ne_all(&b).unwrap();
        let c = complement_profile(&m, b.len()).unwrap();
        let top = fullrank_complement(&m, b.len()).unwrap();
        assert_eq!(top, c.entry(b.m().min(b.n())));
        let brute = brute_profile(&b.complement(), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.eval(2).unwrap(), brute.counts, "{b:?}");
        // back again
        let back = complement_profile(&c, b.m() * b.n() - b.len()).unwrap();
        assert_eq!(back, m.to_raw());
    }
}

#[test]
fn derangement_board_full_rank() {
    let d = diagonal(3);
    let m = m_ne_all(&d).unwrap();
    let top = fullrank_complement(&m, 3).unwrap();
    let brute = brute_m(&d.complement(), 2, 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(top.eval_integer(2).unwrap(), brute);
    // det = ade + bcf over F_2, so exactly one of the two products is 1: 2 * 7.
    assert_eq!(brute, BigInt::from(14));
}
