//! Executable identities for the Krawtchouk tables. Each checker recomputes
//! only what it needs from the table it is given, so a corrupted table fails.

use super::KrawTable;
use crate::error::{Error, Result};
use crate::exactpoly::{qpoch, QPoly, TPoly};
use crate::rookcount::v_count;

fn fail(what: &str, detail: String) -> Error {
    Error::IdentityFailure(format!("{what}: {detail}"))
}

/// Both sides of
/// `sum_r K_r(i) (q^{n-m+1}; q)_{m-r} (t; 1/q)_r = t^m (q^{n-m+1}; q)_{m-i} (q^n/t; 1/q)_i`.
pub fn kraw_identity_lhs_rhs(m: usize, n: usize, i: usize) -> (TPoly, TPoly) {
    let table = KrawTable::new(m, n);
    let mut lhs = TPoly::zero(m);
    for r in 0..=m {
        let c = &table.entries[r][i] * &qpoch((n - m + 1) as i64, m - r);
        lhs = &lhs + &TPoly::pochhammer_t_inv(r).scale(&c);
    }
    // t^m (q^n/t; 1/q)_i = t^{m-i} prod_{j<i} (t - q^{n-j})
    let mut rhs = TPoly::t_pow(m, m - i);
    for j in 0..i {
        rhs = rhs.mul_linear(&-QPoly::q_pow((n - j) as i64), &QPoly::one());
    }
    let rhs = rhs.scale(&qpoch((n - m + 1) as i64, m - i)).with_bound(m).expect("degree m");
    (lhs.with_bound(m).expect("degree at most m"), rhs)
}

/// `sum_i v_i K_k(i) K_l(i) = q^{mn} v_k delta_{kl}`.
pub fn check_orthogonality(t: &KrawTable) -> Result<()> {
    let v: Vec<QPoly> = (0..=t.m).map(|k| v_count(t.m, t.n, k)).collect();
    for k in 0..=t.m {
        for l in 0..=t.m {
            let lhs: QPoly = (0..=t.m).map(|i| &(&v[i] * &t.entries[k][i]) * &t.entries[l][i]).sum();
            let rhs = if k == l { v[k].shift((t.m * t.n) as i64) } else { QPoly::zero() };
            if lhs != rhs {
                return Err(fail("orthogonality", format!("k={k} l={l}: {lhs} != {rhs}")));
            }
        }
    }
    Ok(())
}

/// `K_r(i) v_i = K_i(r) v_r`.
pub fn check_symmetry(t: &KrawTable) -> Result<()> {
    for r in 0..=t.m {
        for i in 0..=t.m {
            let lhs = &t.entries[r][i] * &v_count(t.m, t.n, i);
            let rhs = &t.entries[i][r] * &v_count(t.m, t.n, r);
            if lhs != rhs {
                return Err(fail("symmetry", format!("r={r} i={i}")));
            }
        }
    }
    Ok(())
}

/// The three-term recurrence in the degree index:
/// `q^{m+n}(q^{-k} - 1) K_i(k) = q^i (q^{i+1} - 1) K_{i+1}(k)
///  + (q^m - q^{i-1})(q^n - q^{i-1}) K_{i-1}(k)
///  - ((q^m - q^i)(q^n - q^i) + q^{i-1}(q^i - 1)) K_i(k)`.
pub fn check_three_term(t: &KrawTable) -> Result<()> {
    let (m, n) = (t.m as i64, t.n as i64);
    let qp = QPoly::q_pow;
    let one = QPoly::one();
    for i in 0..=m {
        for k in 0..=t.m {
            let lhs = &(&qp(-(k as i64)) - &one).shift(m + n) * &t.get(i, k);
            let a = &(&qp(i + 1) - &one).shift(i) * &t.get(i + 1, k);
            let b = &(&(&qp(m) - &qp(i - 1)) * &(&qp(n) - &qp(i - 1))) * &t.get(i - 1, k);
            let c = &(&(&(&qp(m) - &qp(i)) * &(&qp(n) - &qp(i))) + &(&qp(i) - &one).shift(i - 1))
                * &t.get(i, k);
            let rhs = &(&a + &b) - &c;
            if lhs != rhs {
                return Err(fail("three-term recurrence", format!("i={i} k={k}: {lhs} != {rhs}")));
            }
        }
    }
    Ok(())
}

/// `K^{m,n}_r(j+1) = q^r K^{m-1,n-1}_r(j) - q^{r-1} K^{m-1,n-1}_{r-1}(j)`,
/// with `big` for `(m, n)` and `small` for `(m-1, n-1)`.
pub fn check_index_shift(big: &KrawTable, small: &KrawTable) -> Result<()> {
    if small.m + 1 != big.m || small.n + 1 != big.n {
        return Err(Error::InvalidInput("tables must have sizes (m,n) and (m-1,n-1)".into()));
    }
    for j in 0..big.m {
        for r in 0..=big.m as i64 {
            let lhs = big.get(r, j + 1);
            let rhs = &small.get(r, j).shift(r) - &small.get(r - 1, j).shift(r - 1);
            if lhs != rhs {
                return Err(fail("index shift", format!("r={r} j={j}: {lhs} != {rhs}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_on_small_rectangles() {
        for n in 1..=4 {
            for m in 1..=n {
                let t = KrawTable::new(m, n);
                check_orthogonality(&t).unwrap();
                check_symmetry(&t).unwrap();
                check_three_term(&t).unwrap();
                check_index_shift(&t, &KrawTable::new(m - 1, n - 1)).unwrap();
                for i in 0..=m {
                    let (l, r) = kraw_identity_lhs_rhs(m, n, i);
                    assert_eq!(l, r, "m={m} n={n} i={i}");
                }
            }
        }
    }

    #[test]
    fn corrupted_tables_are_caught() {
        let good = KrawTable::new(3, 3);
        let mut bad = good.clone();
        bad.entries[2][1] += &QPoly::q();
        assert!(check_orthogonality(&bad).is_err());
        assert!(check_symmetry(&bad).is_err());
        assert!(check_three_term(&bad).is_err());
        assert!(check_index_shift(&bad, &KrawTable::new(2, 2)).is_err());
    }
}
