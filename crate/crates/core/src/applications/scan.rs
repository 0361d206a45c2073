//! Exhaustive searches for negative coefficients in `M_r(complement of I_w)`.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::boards::Perm;
use crate::delcon::DelconEngine;
use crate::error::{Error, Result};
use crate::exactpoly::QPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub w: String,
    pub r: usize,
    /// The offending polynomial, highest power first.
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanStats {
    pub scanned: u64,
    pub total: u64,
    /// False when the scan stopped at its limit; the violations then cover
    /// only the permutations visited (lowest coinversion counts first).
    pub complete: bool,
    pub memo_entries: u64,
    pub memo_hits: u64,
    pub memo_misses: u64,
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub family: String,
    pub n: usize,
    pub ranks: Vec<usize>,
    /// Sorted by permutation (lexicographic), then rank.
    pub violations: Vec<Violation>,
    pub stats: ScanStats,
}

impl ConjectureReport {
    /// Distinct violating permutations.
    pub fn permutations(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.violations.iter().map(|v| v.w.as_str()).collect();
        set.into_iter().map(String::from).collect()
    }

    /// Distinct permutations violating at rank `r`.
    pub fn count_at(&self, r: usize) -> usize {
        self.violations.iter().filter(|v| v.r == r).count()
    }

    /// Permutations violating at both ranks.
    pub fn count_both(&self, r1: usize, r2: usize) -> usize {
        let a: BTreeSet<&str> = self.violations.iter().filter(|v| v.r == r1).map(|v| v.w.as_str()).collect();
        self.violations.iter().filter(|v| v.r == r2 && a.contains(v.w.as_str())).count()
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    /// Stop after this many permutations.
    pub limit: Option<u64>,
    /// Memo file loaded before and saved after the scan.
    pub cache: Option<PathBuf>,
    pub max_n: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { workers: None, limit: None, cache: None, max_n: 10 }
    }
}

/// Computes `M_r(complement of I_w)` for every `w` in `S_n` and every requested
/// rank, and records each polynomial with a negative coefficient.
pub fn scan_negativity(n: usize, ranks: &[usize], opts: &ScanOptions) -> Result<ConjectureReport> {
    if n == 0 || n > opts.max_n {
        return Err(Error::InvalidInput(format!("scan size must be in 1..={}, got {n}", opts.max_n)));
    }
    let mut ranks: Vec<usize> = ranks.to_vec();
    ranks.sort_unstable();
    ranks.dedup();
    if let Some(&r) = ranks.iter().find(|&&r| r > n) {
        return Err(Error::InvalidInput(format!("rank {r} exceeds {n}")));
    }
    let start = Instant::now();
    let engine = DelconEngine::new();
    if let Some(path) = opts.cache.as_deref().filter(|p| p.exists()) {
        engine.memo().load(path)?;
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = opts.workers {
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;

    let mut violations = Vec::new();
    let scanned = pool.install(|| {
        engine.scan_levels(n, &ranks, opts.limit, |w, vals| {
            for (&r, c) in ranks.iter().zip(vals) {
                if c.iter().any(|&x| x < 0) {
                    let poly = QPoly::from_coeffs(0, c.iter().map(|&x| x.into()).collect());
                    violations.push((w.clone(), r, poly.to_text()));
                }
            }
        })
    })?;
    violations.sort();
    if let Some(path) = &opts.cache {
        engine.memo().save(path)?;
    }
    let total: u64 = (1..=n as u64).product();
    let memo = engine.memo().stats();
    Ok(ConjectureReport {
        family: "complement-of-diagram".into(),
        n,
        ranks,
        violations: violations.into_iter().map(|(w, r, poly)| Violation { w: w.to_string(), r, poly }).collect(),
        stats: ScanStats {
            scanned,
            total,
            complete: scanned == total,
            memo_entries: memo.entries,
            memo_hits: memo.hits,
            memo_misses: memo.misses,
            wall_seconds: start.elapsed().as_secs_f64(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonHeredity {
    pub w: String,
    pub pattern: String,
    pub contains_pattern: bool,
    pub all_ranks_nonnegative: bool,
    /// Both of the above: positivity is not inherited by patterns.
    pub holds: bool,
}

/// `5 8 9 10 6 7 3 4 1 2` has nonnegative counts at every rank although it
/// contains `789563412`, whose rank-1 count has a negative coefficient.
pub fn pattern_nonheredity_check(engine: &DelconEngine) -> Result<NonHeredity> {
    let w = Perm::from_slice(&[5, 8, 9, 10, 6, 7, 3, 4, 1, 2])?;
    let pattern: Perm = "789563412".parse()?;
    let contains_pattern = w.contains_pattern(&pattern);
    let pattern_negative = engine.m_complement(&pattern, 1)?.has_negative_coefficient();
    let all_ranks_nonnegative =
        engine.m_complement_profile(&w)?.iter().all(|p| !p.has_negative_coefficient());
    Ok(NonHeredity {
        w: w.to_string(),
        pattern: pattern.to_string(),
        contains_pattern,
        all_ranks_nonnegative,
        holds: contains_pattern && all_ranks_nonnegative && pattern_negative,
    })
}
