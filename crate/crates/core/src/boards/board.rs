use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell `(row, column)`, 1-based, row 1 on top.
pub type Cell = (usize, usize);

/// Largest supported side length; rows are stored as 64-bit masks.
pub const MAX_DIM: usize = 64;

/// A subset of the rectangle `[m] x [n]`.
///
/// Bit `j - 1` of `rows[i - 1]` is set iff cell `(i, j)` is on the board.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Board {
    m: usize,
    n: usize,
    rows: Vec<u64>,
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Removes bit `j - 1` from `mask`, closing the gap.
fn squeeze(mask: u64, j: usize) -> u64 {
    let below = mask & low_mask(j - 1);
    let above = if j >= 64 { 0 } else { mask >> j };
    below | (above << (j - 1))
}

impl Board {
    /// The empty board in `[m] x [n]`. Panics if a side exceeds [`MAX_DIM`].
    pub fn empty(m: usize, n: usize) -> Self {
        assert!(m <= MAX_DIM && n <= MAX_DIM, "board {m}x{n} exceeds {MAX_DIM}x{MAX_DIM}");
        Board { m, n, rows: vec![0; m] }
    }

    pub fn full(m: usize, n: usize) -> Self {
        let mut b = Self::empty(m, n);
        for r in &mut b.rows {
            *r = low_mask(n);
        }
        b
    }

    pub fn from_cells(m: usize, n: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if m > MAX_DIM || n > MAX_DIM {
            return Err(Error::InvalidInput(format!("board {m}x{n} exceeds {MAX_DIM}x{MAX_DIM}")));
        }
        let mut b = Self::empty(m, n);
        for (i, j) in cells {
            if i == 0 || j == 0 || i > m || j > n {
                return Err(Error::InvalidInput(format!("cell ({i}, {j}) outside [{m}]x[{n}]")));
            }
            b.insert((i, j));
        }
        Ok(b)
    }

    /// Builds a board from row masks (bit `j - 1` is column `j`).
    pub fn from_row_masks(m: usize, n: usize, rows: Vec<u64>) -> Result<Self> {
        if rows.len() != m || m > MAX_DIM || n > MAX_DIM {
            return Err(Error::InvalidInput("row mask count does not match".into()));
        }
        if rows.iter().any(|r| r & !low_mask(n) != 0) {
            return Err(Error::InvalidInput("row mask has bits beyond column n".into()));
        }
        Ok(Board { m, n, rows })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn contains(&self, (i, j): Cell) -> bool {
        i >= 1 && j >= 1 && i <= self.m && j <= self.n && self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn insert(&mut self, (i, j): Cell) {
        assert!(i >= 1 && j >= 1 && i <= self.m && j <= self.n);
        self.rows[i - 1] |= 1 << (j - 1);
    }

    pub fn remove(&mut self, (i, j): Cell) {
        assert!(i >= 1 && j >= 1 && i <= self.m && j <= self.n);
        self.rows[i - 1] &= !(1 << (j - 1));
    }

    /// Column mask of row `i` (1-based).
    pub fn row_mask(&self, i: usize) -> u64 {
        self.rows[i - 1]
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.rows
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.len());
        for (r, &mask) in self.rows.iter().enumerate() {
            let mut bits = mask;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                out.push((r + 1, j + 1));
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn complement(&self) -> Board {
        Board { m: self.m, n: self.n, rows: self.rows.iter().map(|r| !r & low_mask(self.n)).collect() }
    }

    /// Reflection in the main diagonal; lives in `[n] x [m]`.
    pub fn transpose(&self) -> Board {
        let mut t = Board::empty(self.n, self.m);
        for (i, j) in self.cells() {
            t.insert((j, i));
        }
        t
    }

    /// Reflection in the anti-diagonal: `(i, j) -> (n + 1 - j, m + 1 - i)`, in `[n] x [m]`.
    /// Preserves the NE property.
    pub fn antitranspose(&self) -> Board {
        let mut t = Board::empty(self.n, self.m);
        for (i, j) in self.cells() {
            t.insert((self.n + 1 - j, self.m + 1 - i));
        }
        t
    }

    /// Moves cell `(i, j)` to `(row_perm[i-1], col_perm[j-1])`; both arguments
    /// are 1-based permutations of the row and column indices.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Board> {
        let check = |p: &[usize], k: usize| {
            let mut seen = vec![false; k + 1];
            p.len() == k
                && p.iter().all(|&x| x >= 1 && x <= k && !std::mem::replace(&mut seen[x], true))
        };
        if !check(row_perm, self.m) || !check(col_perm, self.n) {
            return Err(Error::InvalidInput("row/column relabelling is not a permutation".into()));
        }
        let mut out = Board::empty(self.m, self.n);
        for (i, j) in self.cells() {
            out.insert((row_perm[i - 1], col_perm[j - 1]));
        }
        Ok(out)
    }

    /// Whether `(i,j), (i',j), (i',j')` in the board with `i < i'`, `j < j'`
    /// always forces `(i,j')`.
    pub fn is_ne_property(&self) -> bool {
        for lo in 0..self.m {
            for hi in lo + 1..self.m {
                let common = self.rows[lo] & self.rows[hi];
                if common == 0 {
                    continue;
                }
                let j0 = common.trailing_zeros() as usize;
                let east = self.rows[hi] & !low_mask(j0 + 1);
                if east & !self.rows[lo] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Cells with no other board cell weakly below and weakly to the left,
    /// in row-major order.
    pub fn sw_corners(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        // Smallest occupied column strictly below the current row.
        let mut min_below = usize::MAX;
        for r in (0..self.m).rev() {
            let mask = self.rows[r];
            if mask != 0 {
                let j = mask.trailing_zeros() as usize;
                if j < min_below {
                    out.push((r + 1, j + 1));
                }
                min_below = min_below.min(j);
            }
        }
        out.reverse();
        out
    }

    /// The board minus one of its cells, in the same rectangle.
    pub fn delete_cell(&self, c: Cell) -> Result<Board> {
        if !self.contains(c) {
            return Err(Error::CellNotInBoard(c.0, c.1));
        }
        let mut b = self.clone();
        b.remove(c);
        Ok(b)
    }

    /// Removes the row and column of `c` and reindexes into `[m-1] x [n-1]`.
    pub fn contract_cell(&self, c: Cell) -> Result<Board> {
        if !self.contains(c) {
            return Err(Error::CellNotInBoard(c.0, c.1));
        }
        let (i, j) = c;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(r, _)| r + 1 != i)
            .map(|(_, &mask)| squeeze(mask, j))
            .collect();
        Ok(Board { m: self.m - 1, n: self.n - 1, rows })
    }

    /// Parses lines of `.` and `X` (row 1 first). Blank lines and lines starting
    /// with `#` are skipped.
    pub fn from_grid(text: &str) -> Result<Board> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.is_empty() {
            return Err(Error::Parse("empty board grid".into()));
        }
        let n = lines[0].chars().count();
        let m = lines.len();
        if m > MAX_DIM || n > MAX_DIM {
            return Err(Error::Parse(format!("grid {m}x{n} exceeds {MAX_DIM}x{MAX_DIM}")));
        }
        let mut b = Board::empty(m, n);
        for (r, line) in lines.iter().enumerate() {
            if line.chars().count() != n {
                return Err(Error::Parse(format!("grid row {} has the wrong width", r + 1)));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    'X' | 'x' => b.insert((r + 1, c + 1)),
                    '.' => {}
                    other => {
                        return Err(Error::Parse(format!("unexpected {other:?} in board grid")))
                    }
                }
            }
        }
        Ok(b)
    }

    pub fn to_grid(&self) -> String {
        let mut s = String::with_capacity(self.m * (self.n + 1));
        for i in 1..=self.m {
            for j in 1..=self.n {
                s.push(if self.contains((i, j)) { 'X' } else { '.' });
            }
            s.push('\n');
        }
        s
    }

    /// All `2^(m n)` boards in `[m] x [n]`, for small rectangles.
    pub fn all_in(m: usize, n: usize) -> impl Iterator<Item = Board> {
        assert!(m * n <= 24, "too many boards to enumerate");
        (0u64..1 << (m * n)).map(move |bits| {
            let rows = (0..m).map(|r| (bits >> (r * n)) & low_mask(n)).collect();
            Board { m, n, rows }
        })
    }
}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Board {}x{} {:?}", self.m, self.n, self.cells())
    }
}

#[derive(Serialize, Deserialize)]
struct BoardJson {
    m: usize,
    n: usize,
    cells: Vec<[usize; 2]>,
}

impl Serialize for Board {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoardJson { m: self.m, n: self.n, cells: self.cells().into_iter().map(|(i, j)| [i, j]).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Board {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BoardJson::deserialize(d)?;
        Board::from_cells(raw.m, raw.n, raw.cells.into_iter().map(|[i, j]| (i, j)))
            .map_err(serde::de::Error::custom)
    }
}

/// `{(1,1), ..., (n,n)}`.
pub fn diagonal(n: usize) -> Board {
    Board::from_cells(n, n, (1..=n).map(|i| (i, i))).expect("diagonal fits")
}

/// Main diagonal together with the superdiagonal.
pub fn bidiagonal(n: usize) -> Board {
    let mut b = diagonal(n);
    for i in 1..n {
        b.insert((i, i + 1));
    }
    b
}

/// The menage board: [`bidiagonal`] plus the cell `(n, 1)`.
pub fn menage(n: usize) -> Board {
    let mut b = bidiagonal(n);
    if n >= 1 {
        b.insert((n, 1));
    }
    b
}

/// Lines of the Fano plane on points 1..7.
pub const FANO_LINES: [[usize; 3]; 7] =
    [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];

/// Point-line incidence board of the Fano plane: `(i, j)` iff point `i` lies on line `j`.
pub fn fano() -> Board {
    let cells = FANO_LINES
        .iter()
        .enumerate()
        .flat_map(|(j, line)| line.iter().map(move |&p| (p, j + 1)));
    Board::from_cells(7, 7, cells).expect("fano fits")
}
