use serde::{Deserialize, Serialize};

use super::board::{Board, MAX_DIM};
use crate::error::{Error, Result};

/// Which corner of the rectangle the rows of a Ferrers board hug.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Longest row on top, rows left-justified (English notation).
    UpperLeft,
    /// Longest row on top, rows right-justified.
    UpperRight,
    /// Longest row at the bottom, rows left-justified (French notation).
    LowerLeft,
    /// Longest row at the bottom, rows right-justified.
    LowerRight,
}

impl Orientation {
    pub const ALL: [Orientation; 4] =
        [Orientation::UpperLeft, Orientation::UpperRight, Orientation::LowerLeft, Orientation::LowerRight];
}

/// An integer partition placed in a corner of an `m x n` rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
    pub orientation: Orientation,
}

impl Partition {
    /// Zero parts are dropped; the rest must be weakly decreasing.
    pub fn new(parts: Vec<usize>, orientation: Orientation) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition { parts, orientation })
    }

    /// `(k, k-1, ..., 1)`.
    pub fn staircase(k: usize, orientation: Orientation) -> Self {
        Partition { parts: (1..=k).rev().collect(), orientation }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    fn fits(&self, m: usize, n: usize) -> Result<()> {
        if m > MAX_DIM || n > MAX_DIM || self.parts.len() > m || self.parts.first().is_some_and(|&p| p > n) {
            return Err(Error::InvalidInput(format!("partition {:?} does not fit in {m}x{n}", self.parts)));
        }
        Ok(())
    }

    fn row_cells(&self, m: usize, n: usize, k: usize, len: usize) -> impl Iterator<Item = (usize, usize)> {
        let row = match self.orientation {
            Orientation::UpperLeft | Orientation::UpperRight => k + 1,
            Orientation::LowerLeft | Orientation::LowerRight => m - k,
        };
        let cols = match self.orientation {
            Orientation::UpperLeft | Orientation::LowerLeft => 1..=len,
            Orientation::UpperRight | Orientation::LowerRight => n - len + 1..=n,
        };
        cols.map(move |c| (row, c))
    }
}

/// The Ferrers board of `lambda` inside `[m] x [n]`.
pub fn ferrers(lambda: &Partition, m: usize, n: usize) -> Result<Board> {
    lambda.fits(m, n)?;
    let cells = lambda.parts.iter().enumerate().flat_map(|(k, &len)| lambda.row_cells(m, n, k, len));
    Board::from_cells(m, n, cells)
}

/// Cells of `lambda` not in `mu`, both placed in the orientation of `lambda`.
pub fn skew(lambda: &Partition, mu: &Partition, m: usize, n: usize) -> Result<Board> {
    if mu.parts.len() > lambda.parts.len() || mu.parts.iter().zip(&lambda.parts).any(|(a, b)| a > b) {
        return Err(Error::InvalidInput(format!("{:?} is not contained in {:?}", mu.parts, lambda.parts)));
    }
    let outer = ferrers(lambda, m, n)?;
    let inner = ferrers(&Partition { parts: mu.parts.clone(), orientation: lambda.orientation }, m, n)?;
    Board::from_cells(m, n, outer.cells().into_iter().filter(|&c| !inner.contains(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientations() {
        let shape = |o| ferrers(&Partition::new(vec![2, 1], o).unwrap(), 3, 3).unwrap().cells();
        assert_eq!(shape(Orientation::UpperLeft), vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(shape(Orientation::UpperRight), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(shape(Orientation::LowerLeft), vec![(2, 1), (3, 1), (3, 2)]);
        assert_eq!(shape(Orientation::LowerRight), vec![(2, 3), (3, 2), (3, 3)]);
    }

    #[test]
    fn malformed() {
        assert!(Partition::new(vec![1, 2], Orientation::UpperLeft).is_err());
        let p = Partition::new(vec![4], Orientation::UpperLeft).unwrap();
        assert!(ferrers(&p, 1, 3).is_err());
        let big = Partition::new(vec![1, 1, 1], Orientation::UpperLeft).unwrap();
        assert!(skew(&p, &big, 3, 4).is_err());
    }

    #[test]
    fn skew_removes_inner_shape() {
        let l = Partition::new(vec![3, 2], Orientation::UpperLeft).unwrap();
        let mu = Partition::new(vec![1], Orientation::UpperLeft).unwrap();
        assert_eq!(skew(&l, &mu, 2, 3).unwrap().cells(), vec![(1, 2), (1, 3), (2, 1), (2, 2)]);
    }

    #[test]
    fn ferrers_boards_are_ne_in_upper_right_orientation() {
        let p = Partition::new(vec![4, 2, 2, 1], Orientation::UpperRight).unwrap();
        assert!(ferrers(&p, 4, 4).unwrap().is_ne_property());
        let p = Partition::new(vec![4, 2, 2, 1], Orientation::UpperLeft).unwrap();
        assert!(ferrers(&p, 4, 4).unwrap().is_ne_property());
    }
}
