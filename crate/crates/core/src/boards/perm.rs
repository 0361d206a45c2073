use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::board::{Board, Cell, MAX_DIM};
use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Perm {
    word: Vec<u8>,
}

impl TryFrom<Vec<u8>> for Perm {
    type Error = Error;
    fn try_from(word: Vec<u8>) -> Result<Self> {
        Perm::new(word)
    }
}

impl From<Perm> for Vec<u8> {
    fn from(p: Perm) -> Self {
        p.word
    }
}

impl Perm {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n > MAX_DIM {
            return Err(Error::InvalidInput(format!("permutation length {n} exceeds {MAX_DIM}")));
        }
        let mut seen = vec![false; n + 1];
        for &x in &word {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidInput(format!("{word:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Perm { word })
    }

    pub fn from_slice(word: &[usize]) -> Result<Self> {
        if word.iter().any(|&x| x > u8::MAX as usize) {
            return Err(Error::InvalidInput("permutation entry too large".into()));
        }
        Perm::new(word.iter().map(|&x| x as u8).collect())
    }

    pub fn identity(n: usize) -> Self {
        Perm { word: (1..=n as u8).collect() }
    }

    /// `n n-1 ... 1`.
    pub fn decreasing(n: usize) -> Self {
        Perm { word: (1..=n as u8).rev().collect() }
    }

    /// The permutation order-isomorphic to a sequence of distinct values.
    pub fn standardize(seq: &[u8]) -> Self {
        let mut idx: Vec<usize> = (0..seq.len()).collect();
        idx.sort_by_key(|&k| seq[k]);
        let mut word = vec![0u8; seq.len()];
        for (rank, &k) in idx.iter().enumerate() {
            word[k] = rank as u8 + 1;
        }
        Perm { word }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// `w_i`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    /// Position `j` with `w_j = value`.
    pub fn position_of(&self, value: usize) -> usize {
        self.word.iter().position(|&x| x as usize == value).expect("value in range") + 1
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.len()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x as usize - 1] = i as u8 + 1;
        }
        Perm { word: inv }
    }

    /// Number of inversions, `l(w)`.
    pub fn length(&self) -> usize {
        let w = &self.word;
        (0..w.len()).map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count()).sum()
    }

    /// Number of pairs `i < j` with `w_i < w_j`; equals the size of the diagram.
    pub fn coinversions(&self) -> usize {
        let n = self.len();
        n * n.saturating_sub(1) / 2 - self.length()
    }

    /// `{(i, w_j) : i < j, w_i < w_j}` inside `[n] x [n]`.
    pub fn diagram(&self) -> Board {
        let n = self.len();
        let rows = (0..n)
            .map(|i| {
                self.word[i + 1..]
                    .iter()
                    .filter(|&&x| x > self.word[i])
                    .fold(0u64, |acc, &x| acc | 1 << (x - 1))
            })
            .collect();
        Board::from_row_masks(n, n, rows).expect("diagram fits")
    }

    /// SW corners of the diagram, as position pairs `(i, j)` with corner `(i, w_j)`,
    /// in row-major order.
    pub fn corner_positions(&self) -> Vec<(usize, usize)> {
        let w = &self.word;
        let n = w.len();
        let mut out = Vec::new();
        // A row's leftmost cell is its smallest larger value to the right; it is a
        // corner iff no later row reaches that column or further left.
        let mut min_below = u8::MAX;
        for i in (0..n).rev() {
            let mut best: Option<usize> = None;
            for j in i + 1..n {
                if w[j] > w[i] && best.map_or(true, |b| w[j] < w[b]) {
                    best = Some(j);
                }
            }
            if let Some(j) = best {
                if w[j] < min_below {
                    out.push((i + 1, j + 1));
                }
                min_below = min_below.min(w[j]);
            }
        }
        out.reverse();
        out
    }

    fn corner_to_positions(&self, (i, c): Cell) -> Result<(usize, usize)> {
        if i == 0 || c == 0 || i > self.len() || c > self.len() {
            return Err(Error::NotSwCorner(i, c));
        }
        let j = self.position_of(c);
        if self.corner_positions().contains(&(i, j)) {
            Ok((i, j))
        } else {
            Err(Error::NotSwCorner(i, c))
        }
    }

    /// `w` with positions `i` and `j` swapped (1-based).
    pub fn swap_positions(&self, i: usize, j: usize) -> Perm {
        let mut word = self.word.clone();
        word.swap(i - 1, j - 1);
        Perm { word }
    }

    /// Moves `w_i` to position `j` (i < j), drops it, and standardizes:
    /// the word order-isomorphic to `w_1..w_{i-1} w_{i+1}..w_{j-1} w_i w_{j+1}..w_n`
    /// with the value `w_j` removed.
    pub fn contract_positions(&self, i: usize, j: usize) -> Perm {
        let w = &self.word;
        let (wi, wj) = (w[i - 1], w[j - 1]);
        let mut seq = Vec::with_capacity(w.len() - 1);
        for (k, &x) in w.iter().enumerate() {
            let pos = k + 1;
            if pos == i {
                continue;
            }
            seq.push(if pos == j { wi } else { x });
        }
        // Close the gap left by the value wj.
        for x in &mut seq {
            if *x > wj {
                *x -= 1;
            }
        }
        Perm { word: seq }
    }

    /// Deletion at a SW corner `(i, w_j)`: the transposition of positions `i` and `j`.
    pub fn delete_corner(&self, corner: Cell) -> Result<Perm> {
        let (i, j) = self.corner_to_positions(corner)?;
        Ok(self.swap_positions(i, j))
    }

    /// Contraction at a SW corner `(i, w_j)`.
    pub fn contract_corner(&self, corner: Cell) -> Result<Perm> {
        let (i, j) = self.corner_to_positions(corner)?;
        Ok(self.contract_positions(i, j))
    }

    /// `w0 w^{-1} w0`, whose diagram is the reflection of this one in the
    /// anti-diagonal. Reflected boards have the same rank counts.
    pub fn antitranspose_partner(&self) -> Perm {
        let n = self.len() as u8;
        let inv = self.inverse();
        Perm { word: (1..=n).map(|k| n + 1 - inv.word[(n - k) as usize]).collect() }
    }

    /// Whether some subsequence of `self` is order-isomorphic to `p`.
    pub fn contains_pattern(&self, p: &Perm) -> bool {
        fn go(w: &[u8], p: &[u8], start: usize, chosen: &mut Vec<u8>) -> bool {
            let t = chosen.len();
            if t == p.len() {
                return true;
            }
            if w.len() - start < p.len() - t {
                return false;
            }
            for pos in start..w.len() {
                let x = w[pos];
                if chosen.iter().zip(p).all(|(&y, &ps)| (y < x) == (ps < p[t])) {
                    chosen.push(x);
                    if go(w, p, pos + 1, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        p.len() <= self.len() && go(&self.word, &p.word, 0, &mut Vec::with_capacity(p.len()))
    }

    /// All permutations of `n` in lexicographic order.
    pub fn all(n: usize) -> AllPerms {
        AllPerms { next: Some(Perm::identity(n)) }
    }

    /// Packs `n <= 16` entries into 4 bits each (entry minus one), position 1 lowest.
    pub fn pack(&self) -> u64 {
        assert!(self.len() <= 16);
        self.word.iter().enumerate().fold(0u64, |acc, (k, &x)| acc | ((x as u64 - 1) << (4 * k)))
    }

    pub fn unpack(code: u64, n: usize) -> Perm {
        Perm { word: (0..n).map(|k| ((code >> (4 * k)) & 0xf) as u8 + 1).collect() }
    }
}

/// Lexicographic enumeration of a symmetric group.
pub struct AllPerms {
    next: Option<Perm>,
}

impl Iterator for AllPerms {
    type Item = Perm;
    fn next(&mut self) -> Option<Perm> {
        let cur = self.next.take()?;
        let mut w = cur.word.clone();
        let n = w.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| w[i] < w[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).unwrap();
                w.swap(i, j);
                w[i + 1..].reverse();
                self.next = Some(Perm { word: w });
            }
        }
        Some(cur)
    }
}

impl fmt::Display for Perm {
    /// Compact digits when every entry is a single digit, else space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.len() <= 9;
        for (k, x) in self.word.iter().enumerate() {
            if k > 0 && !compact {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Accepts `3412`, `3 4 1 2` or `3,4,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<&str> =
            s.split(|c: char| c.is_whitespace() || c == ',').filter(|p| !p.is_empty()).collect();
        let entries: Vec<usize> = if parts.len() == 1 && s.chars().all(|c| c.is_ascii_digit()) {
            if s.len() > 9 {
                return Err(Error::Parse(format!(
                    "compact form {s:?} is ambiguous beyond 9 entries; separate with spaces"
                )));
            }
            s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
        } else {
            parts
                .iter()
                .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {p:?}"))))
                .collect::<Result<_>>()?
        };
        Perm::from_slice(&entries).map_err(|e| Error::Parse(e.to_string()))
    }
}
