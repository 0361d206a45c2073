//! Exact Laurent-polynomial arithmetic in `q`, the usual q-counting
//! primitives, and polynomials in `t` with coefficients in `Z[q, q^-1]`.

mod qcomb;
pub mod serde_big;
mod qpoly;
mod tpoly;

pub use qcomb::{
    binom, choose2, factorial, q_minus_one_pow, qbinom, qfact, qint, qint_product, qpoch,
    qpoch_inv, shift_variable,
};
pub use qpoly::{exact_div, QPoly};
pub use tpoly::TPoly;
