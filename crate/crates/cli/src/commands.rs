use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use qrook::applications::{
    derangement_poly, fano_check, qmenage, scan_negativity, ConjectureReport, ScanOptions,
};
use qrook::boards::{Board, Perm};
use qrook::delcon::DelconEngine;
use qrook::krawtchouk::{complement_profile, symbolic_profile};
use qrook::qhit::{f_infty_series, f_k, hit_partition_sum, hit_poly};
use qrook::rookcount::{
    classical_hits, classical_rooks, is_prime, v_count, CountKind, MenageKind, RankCounts, DEFAULT_BUDGET,
};
use qrook::verify::run_suites;
use qrook::{Error, Result};

use crate::input::{parse_ranks, BoardArgs};
use crate::render::{self, json, strings, Format};

/// Environment variable that overrides the default memo cache path.
pub const CACHE_ENV: &str = "QROOK_CACHE";

#[derive(Parser, Debug)]
#[command(name = "qrook", version, about = "Exact q-rook and q-hit numbers and matrix counts over finite fields")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classical rook numbers r_0, r_1, ...
    Rook(BoardArgs),
    /// Classical hit numbers h_0, h_1, ...
    Hit(BoardArgs),
    /// Reduced matrix counts M_r as polynomials in q.
    Qrook(BoardArgs),
    /// q-hit numbers and the q-hit polynomial.
    Qhit(BoardArgs),
    /// M-profile of the complement through the Krawtchouk transform.
    Complement(BoardArgs),
    /// Exact matrix counts at a fixed prime q by enumeration.
    Brute(BruteArgs),
    /// Counts on the complement of a permutation diagram by deletion-contraction.
    Delcon(DelconArgs),
    /// q-menage numbers.
    Menage(MenageArgs),
    /// q-derangement numbers.
    Derangement(SizeArgs),
    /// Full-rank count on the Fano board against the closed expression.
    Fano(FanoArgs),
    /// Search S_n for negative coefficients.
    Scan(ScanArgs),
    /// Compare F_k computed directly with the hit-polynomial series.
    Series(SeriesArgs),
    /// Run the built-in invariant suites.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
pub struct BruteArgs {
    #[command(flatten)]
    pub board: BoardArgs,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Maximum number of matrices to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DelconArgs {
    #[arg(long)]
    pub perm: String,
    /// `all` or a comma-separated list.
    #[arg(long, default_value = "all")]
    pub ranks: String,
    /// Only the full-rank count, by the shorter two-term recurrence.
    #[arg(long, conflicts_with = "ranks")]
    pub fullrank: bool,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MenageChoice {
    Bidiagonal,
    Menage,
}

#[derive(Args, Debug)]
pub struct MenageArgs {
    #[arg(long, value_enum, default_value = "menage")]
    pub kind: MenageChoice,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct SizeArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct FanoArgs {
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "all")]
    pub ranks: String,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Allow n = 10 (several minutes and a few hundred MB).
    #[arg(long)]
    pub extended: bool,
    /// Stop after this many permutations.
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub board: BoardArgs,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: Level,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 2,
        e if e.is_internal() => 3,
        _ => 1,
    }
}

pub fn run(cli: Cli) -> Result<String> {
    let f = cli.format;
    match cli.command {
        Command::Rook(a) => {
            let b = a.board()?;
            numbers("r", &classical_rooks(&b), &b, f)
        }
        Command::Hit(a) => {
            let b = a.board()?;
            numbers("h", &classical_hits(&b)?, &b, f)
        }
        Command::Qrook(a) => {
            let b = a.board()?;
            let p = profile(&a, &b)?;
            Ok(render::m_profile(b.m(), b.n(), b.len(), p.entries(), f))
        }
        Command::Qhit(a) => qhit(&a, f),
        Command::Complement(a) => {
            let b = a.board()?;
            let p = profile(&a, &b)?;
            let c = complement_profile(&p.to_raw(), b.len())?.to_reduced()?;
            Ok(render::m_profile(b.m(), b.n(), b.m() * b.n() - b.len(), c.entries(), f))
        }
        Command::Brute(a) => brute(&a, f),
        Command::Delcon(a) => delcon(&a, f),
        Command::Menage(a) => {
            let kind = match a.kind {
                MenageChoice::Bidiagonal => MenageKind::Bidiagonal,
                MenageChoice::Menage => MenageKind::Menage,
            };
            single("m_n", &qmenage(kind, a.n)?, f)
        }
        Command::Derangement(a) => single("m_n", &derangement_poly(a.n)?, f),
        Command::Fano(a) => {
            let r = fano_check(a.q, a.budget)?;
            Ok(match f {
                Format::Json => json(&serde_json::to_value(&r).expect("serializable")),
                Format::Text => format!(
                    "q = {}\nm_7 = {}\ntotal = {}\nexpression(Z2=0) = {}\nexpression(Z2=1) = {}\nmatching Z2 = {}\n",
                    r.q,
                    r.m7,
                    r.total,
                    r.expression[0],
                    r.expression[1],
                    r.matching_z2.map_or("none".to_string(), |z| z.to_string()),
                ),
            })
        }
        Command::Scan(a) => scan(&a, f),
        Command::Series(a) => series(&a, f),
        Command::Selftest(a) => selftest(&a, f),
    }
}

fn numbers(label: &str, xs: &[BigInt], b: &Board, f: Format) -> Result<String> {
    Ok(match f {
        Format::Json => json(&json!({ "m": b.m(), "n": b.n(), "board_size": b.len(), label: strings(xs) })),
        Format::Text => render::indexed_lines(label, xs),
    })
}

fn single(label: &str, p: &qrook::QPoly, f: Format) -> Result<String> {
    Ok(match f {
        Format::Json => json(&json!({ label: p.to_text() })),
        Format::Text => format!("{p}\n"),
    })
}

/// Reduced symbolic profile: NE boards and their complements directly, and
/// complements of permutation diagrams through the deletion-contraction engine.
fn profile(a: &BoardArgs, b: &Board) -> Result<RankCounts> {
    match (&a.source.perm, a.complement) {
        (Some(w), true) if !b.is_ne_property() && !b.complement().is_ne_property() => {
            let w: Perm = w.parse()?;
            let entries = DelconEngine::new().m_complement_profile(&w)?;
            Ok(RankCounts::new(w.len(), w.len(), CountKind::Reduced, entries))
        }
        _ => symbolic_profile(b),
    }
}

fn qhit(a: &BoardArgs, f: Format) -> Result<String> {
    let b = a.board()?;
    let p = profile(a, &b)?;
    // Rank counts are invariant under transposition, and hits need m <= n.
    let (b, p) = if b.m() > b.n() {
        let t = b.transpose();
        let p = RankCounts::new(t.m(), t.n(), p.kind, p.into_entries());
        (t, p)
    } else {
        (b, p)
    };
    let hits = hit_poly(&p)?;
    let check = hit_partition_sum(&hits) == v_count(b.m(), b.n(), b.m());
    if !check {
        return Err(Error::IdentityFailure("sum of (q-1)^m H_i differs from v_m".into()));
    }
    Ok(render::h_profile(b.m(), b.n(), hits.hits(), &hits.poly().to_string(), check, f))
}

fn with_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = workers {
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

fn brute(a: &BruteArgs, f: Format) -> Result<String> {
    if !is_prime(a.q) {
        return Err(Error::InvalidInput(format!("q = {} is not prime", a.q)));
    }
    let b = a.board.board()?;
    let counts = with_pool(a.workers, || qrook::rookcount::brute_profile(&b, a.q, a.budget))??;
    if let Some(r) = a.rank {
        let c = counts.counts.get(r).cloned().unwrap_or_default();
        return Ok(match f {
            Format::Json => json(&json!({ "q": a.q, "rank": r, "count": c.to_string() })),
            Format::Text => format!("{c}\n"),
        });
    }
    Ok(match f {
        Format::Json => json(&serde_json::to_value(&counts).expect("serializable")),
        Format::Text => render::indexed_lines("m", &counts.counts),
    })
}

fn cache_path(flag: &Option<PathBuf>) -> Option<PathBuf> {
    flag.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

fn delcon(a: &DelconArgs, f: Format) -> Result<String> {
    let w: Perm = a.perm.parse()?;
    let n = w.len();
    let engine = DelconEngine::new();
    let cache = cache_path(&a.cache);
    if let Some(p) = cache.as_deref().filter(|p| p.exists()) {
        engine.memo().load(p)?;
    }
    let ranks = if a.fullrank { vec![n] } else { parse_ranks(&a.ranks, n)? };
    if let Some(&r) = ranks.iter().find(|&&r| r > n) {
        return Err(Error::InvalidInput(format!("rank {r} exceeds {n}")));
    }
    let polys = ranks
        .iter()
        .map(|&r| if a.fullrank { engine.m_complement_fullrank(&w) } else { engine.m_complement(&w, r) })
        .collect::<Result<Vec<_>>>()?;
    if let Some(p) = &cache {
        engine.memo().save(p)?;
    }
    Ok(match f {
        Format::Json => json(&json!({ "w": w.to_string(), "n": n, "ranks": ranks, "M": strings(&polys) })),
        Format::Text => ranks.iter().zip(&polys).map(|(r, p)| format!("M_{r} = {p}\n")).collect(),
    })
}

fn scan(a: &ScanArgs, f: Format) -> Result<String> {
    if a.n == 10 && !a.extended {
        return Err(Error::InvalidInput("n = 10 needs --extended".into()));
    }
    let ranks = parse_ranks(&a.ranks, a.n)?;
    let opts = ScanOptions { workers: a.workers, limit: a.limit, cache: cache_path(&a.cache), ..Default::default() };
    let report = scan_negativity(a.n, &ranks, &opts)?;
    Ok(match f {
        Format::Json => json(&serde_json::to_value(&report).expect("serializable")),
        Format::Text => scan_text(&report),
    })
}

fn scan_text(r: &ConjectureReport) -> String {
    let mut s = format!(
        "n = {}, ranks {:?}: {} of {} permutations scanned{}\n",
        r.n,
        r.ranks,
        r.stats.scanned,
        r.stats.total,
        if r.stats.complete { "" } else { " (partial)" }
    );
    s += &format!("{} violating permutations\n", r.permutations().len());
    for v in &r.violations {
        s += &format!("{} r={}: {}\n", v.w, v.r, v.poly);
    }
    s
}

fn series(a: &SeriesArgs, f: Format) -> Result<String> {
    let b = a.board.board()?;
    let from_hits = f_infty_series(&b, a.q, a.k, a.budget)?;
    let direct = (0..=a.k).map(|k| f_k(&b, a.q, k, a.budget)).collect::<Result<Vec<_>>>()?;
    if let Some(k) = (0..=a.k).find(|&k| from_hits[k] != direct[k]) {
        return Err(Error::IdentityFailure(format!(
            "F_{k}: direct {} but series gives {}",
            direct[k], from_hits[k]
        )));
    }
    Ok(match f {
        Format::Json => json(&json!({ "q": a.q, "F": strings(&direct), "series": strings(&from_hits), "agree": true })),
        Format::Text => render::indexed_lines("F", &direct),
    })
}

fn selftest(a: &SelftestArgs, f: Format) -> Result<String> {
    let outcomes = run_suites(matches!(a.level, Level::Full));
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.ok).map(|o| o.name).collect();
    let out = match f {
        Format::Json => json(&serde_json::to_value(&outcomes).expect("serializable")),
        Format::Text => outcomes
            .iter()
            .map(|o| match &o.detail {
                None => format!("PASS {}\n", o.name),
                Some(d) => format!("FAIL {}: {d}\n", o.name),
            })
            .collect(),
    };
    if failed.is_empty() {
        Ok(out)
    } else {
        eprint!("{out}");
        Err(Error::IdentityFailure(format!("self-test failed: {}", failed.join("; "))))
    }
}
