//! Boards inside `[m] x [n]`, permutations and their diagrams, and the named
//! boards used elsewhere in the crate.
//!
//! Coordinates are matrix-style: `(i, j)` is row `i` from the top and column
//! `j` from the left, both 1-based.

mod board;
mod partition;
mod perm;

pub use board::{bidiagonal, diagonal, fano, menage, Board, Cell, FANO_LINES, MAX_DIM};
pub use partition::{ferrers, skew, Orientation, Partition};
pub use perm::{AllPerms, Perm};
