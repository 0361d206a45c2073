//! Exact q-rook theory over finite fields.
//!
//! * [`exactpoly`]: Laurent polynomials in `q`, q-factorials, q-binomials, and
//!   polynomials in `t` with q-coefficients.
//! * [`boards`]: boards inside an `m x n` rectangle, permutations and their
//!   coinversion diagrams, SW corners, deletion and contraction.
//! * [`rookcount`]: classical rook and hit numbers, brute-force matrix counts
//!   over prime fields, and NE-inversion q-rook numbers.
//! * [`krawtchouk`]: q-Krawtchouk polynomials and the complement transform on
//!   rank profiles.
//! * [`qhit`]: q-hit polynomials and numbers, reciprocity, and the
//!   probability series.
//! * [`delcon`]: deletion-contraction recurrences and the memoized engine for
//!   matrix counts on complements of permutation diagrams.
//! * [`applications`]: q-derangements, q-menage numbers, the Fano board check,
//!   and the positivity scanners.
//! * [`verify`]: the invariant suites behind the command-line self-test.

pub mod applications;
pub mod boards;
pub mod delcon;
pub mod error;
pub mod exactpoly;
pub mod krawtchouk;
pub mod qhit;
pub mod rookcount;
pub mod verify;

pub use error::{Error, Result};
pub use exactpoly::{QPoly, TPoly};
