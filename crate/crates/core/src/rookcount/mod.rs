//! Ground-truth counting: classical rook and hit numbers, brute-force matrix
//! counts over prime fields, and NE q-rook numbers.

mod classical;
mod counts;
mod field;
mod grne;

pub use classical::{classical_hits, classical_rooks, derangements, hits_direct, hits_from_rooks};
pub use counts::{full_profile, menage_m, v_count, CountKind, MenageKind, RankCounts};
pub use field::{brute_m, brute_profile, is_prime, v_count_numeric, FieldCounts, DEFAULT_BUDGET};
pub use grne::{gr_qrook, gr_qrook_all, m_ne, m_ne_all};
