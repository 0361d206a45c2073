//! Board and permutation sources shared by the subcommands.

use std::path::PathBuf;

use clap::Args;
use qrook::boards::{bidiagonal, diagonal, fano, menage, Board, Perm};
use qrook::{Error, Result};

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Board file: a grid of `.` and `X`, or JSON `{"m":..,"n":..,"cells":[[i,j],..]}`.
    #[arg(long)]
    pub board: Option<PathBuf>,
    /// One-line permutation; the board is its coinversion diagram.
    #[arg(long)]
    pub perm: Option<String>,
    /// diagonal:N, bidiagonal:N, menage:N, fano or full:MxN.
    #[arg(long)]
    pub named: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BoardArgs {
    #[command(flatten)]
    pub source: Source,
    /// Use the complement of the board in its rectangle.
    #[arg(long)]
    pub complement: bool,
}

impl BoardArgs {
    pub fn board(&self) -> Result<Board> {
        let b = self.source.board()?;
        Ok(if self.complement { b.complement() } else { b })
    }
}

impl Source {
    pub fn board(&self) -> Result<Board> {
        if let Some(path) = &self.board {
            return parse_board(&std::fs::read_to_string(path)?);
        }
        if let Some(w) = &self.perm {
            return Ok(w.parse::<Perm>()?.diagram());
        }
        if let Some(name) = &self.named {
            return named_board(name);
        }
        Err(Error::InvalidInput("no board given".into()))
    }
}

pub fn parse_board(text: &str) -> Result<Board> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("board JSON: {e}")))
    } else {
        Board::from_grid(text)
    }
}

pub fn named_board(name: &str) -> Result<Board> {
    let bad = || Error::Parse(format!("unknown board name {name:?}"));
    let size = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
    match kind {
        "fano" if arg.is_empty() => Ok(fano()),
        "diagonal" => Ok(diagonal(size(arg)?)),
        "bidiagonal" => Ok(bidiagonal(size(arg)?)),
        "menage" => Ok(menage(size(arg)?)),
        "full" => {
            let (m, n) = arg.split_once(['x', 'X']).ok_or_else(bad)?;
            let (m, n) = (size(m)?, size(n)?);
            if m > qrook::boards::MAX_DIM || n > qrook::boards::MAX_DIM {
                return Err(Error::InvalidInput(format!("{m}x{n} exceeds the maximum board size")));
            }
            Ok(Board::full(m, n))
        }
        _ => Err(bad()),
    }
}

/// `all`, or a comma-separated list of ranks.
pub fn parse_ranks(spec: &str, n: usize) -> Result<Vec<usize>> {
    if spec == "all" {
        return Ok((0..=n).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad rank {s:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(named_board("full:2x3").unwrap().len(), 6);
        assert_eq!(named_board("fano").unwrap().len(), 21);
        assert_eq!(named_board("menage:4").unwrap().len(), 8);
        assert!(named_board("fano:3").is_err());
        assert!(named_board("square:3").is_err());
    }

    #[test]
    fn json_and_grid() {
        let g = parse_board("X.\nXX\n").unwrap();
        let j = parse_board(r#"{"m":2,"n":2,"cells":[[1,1],[2,1],[2,2]]}"#).unwrap();
        assert_eq!(g, j);
    }

    #[test]
    fn ranks() {
        assert_eq!(parse_ranks("all", 3).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_ranks("1, 9", 9).unwrap(), vec![1, 9]);
        assert!(parse_ranks("x", 3).is_err());
    }
}
