//! Cyclic orderings of the row and column systems of a Heffter array, and the
//! compatibility test: the composite of the two orderings must be a single
//! cycle through every cell.
//!
//! Orderings are successor maps on cell coordinates. The composite is taken
//! as "column ordering first, then row ordering", so for the standard
//! construction on an odd number of columns `n = 2t + 1` the walk moves one
//! column right at every step, one row down after columns `1..=t+1` and one
//! row up after columns `t+2..=n`.

use crate::array::{Cell, HeffterArray};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lines {
    Rows,
    Columns,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicOrdering {
    rows: usize,
    cols: usize,
    lines: Lines,
    parts: Vec<Vec<Cell>>,
    succ: Vec<usize>,
}

impl CyclicOrdering {
    /// `parts[k]` must list every cell of row (or column) `k` exactly once.
    pub fn new(rows: usize, cols: usize, lines: Lines, parts: Vec<Vec<Cell>>) -> Result<Self> {
        let (count, len) = match lines {
            Lines::Rows => (rows, cols),
            Lines::Columns => (cols, rows),
        };
        if parts.len() != count {
            return Err(Error::Mismatch(format!(
                "expected {count} parts, got {}",
                parts.len()
            )));
        }
        let mut succ = vec![usize::MAX; rows * cols];
        for (k, part) in parts.iter().enumerate() {
            if part.len() != len {
                return Err(Error::Mismatch(format!(
                    "part {} has {} cells, expected {len}",
                    k + 1,
                    part.len()
                )));
            }
            for (idx, &(i, j)) in part.iter().enumerate() {
                let line = match lines {
                    Lines::Rows => i,
                    Lines::Columns => j,
                };
                if line != k || i >= rows || j >= cols {
                    return Err(Error::Mismatch(format!(
                        "cell ({}, {}) does not belong to part {}",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
                let (ni, nj) = part[(idx + 1) % len];
                let slot = &mut succ[i * cols + j];
                if *slot != usize::MAX {
                    return Err(Error::Mismatch(format!(
                        "cell ({}, {}) listed twice",
                        i + 1,
                        j + 1
                    )));
                }
                *slot = ni * cols + nj;
            }
        }
        Ok(CyclicOrdering {
            rows,
            cols,
            lines,
            parts,
            succ,
        })
    }

    /// Rows left to right, or columns top to bottom.
    pub fn natural(rows: usize, cols: usize, lines: Lines) -> Self {
        let parts = match lines {
            Lines::Rows => (0..rows)
                .map(|i| (0..cols).map(|j| (i, j)).collect())
                .collect(),
            Lines::Columns => (0..cols)
                .map(|j| (0..rows).map(|i| (i, j)).collect())
                .collect(),
        };
        CyclicOrdering::new(rows, cols, lines, parts).expect("natural ordering is well formed")
    }

    pub fn lines(&self) -> Lines {
        self.lines
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn parts(&self) -> &[Vec<Cell>] {
        &self.parts
    }

    pub fn successor(&self, (i, j): Cell) -> Cell {
        let s = self.succ[i * self.cols + j];
        (s / self.cols, s % self.cols)
    }

    /// Entries of part `k` of `h` in this ordering.
    pub fn values(&self, h: &HeffterArray, k: usize) -> Vec<i64> {
        self.parts[k].iter().map(|&c| h.at(c)).collect()
    }

    /// Index of the first part whose partial sums repeat, if any.
    pub fn first_non_simple(&self, h: &HeffterArray) -> Option<usize> {
        (0..self.parts.len()).find(|&k| !h.modulus().is_simple(&self.values(h, k)))
    }
}

/// A permutation of the cells of an `m x n` array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPermutation {
    rows: usize,
    cols: usize,
    map: Vec<usize>,
}

impl CellPermutation {
    pub fn apply(&self, (i, j): Cell) -> Cell {
        let s = self.map[i * self.cols + j];
        (s / self.cols, s % self.cols)
    }

    pub fn as_indices(&self) -> &[usize] {
        &self.map
    }

    pub fn is_single_cycle(&self) -> bool {
        is_single_cycle(&self.map)
    }

    /// The orbit of `start`, in order.
    pub fn orbit(&self, start: Cell) -> Vec<Cell> {
        let first = start.0 * self.cols + start.1;
        let mut out = vec![start];
        let mut k = self.map[first];
        while k != first && out.len() <= self.map.len() {
            out.push((k / self.cols, k % self.cols));
            k = self.map[k];
        }
        out
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

/// `cell -> omega_r(omega_c(cell))`.
pub fn compose(omega_r: &CyclicOrdering, omega_c: &CyclicOrdering) -> Result<CellPermutation> {
    if omega_r.lines != Lines::Rows || omega_c.lines != Lines::Columns {
        return Err(Error::Mismatch(
            "expected a row ordering and a column ordering".into(),
        ));
    }
    if omega_r.shape() != omega_c.shape() {
        return Err(Error::Mismatch(format!(
            "row ordering is {:?}, column ordering is {:?}",
            omega_r.shape(),
            omega_c.shape()
        )));
    }
    let map = omega_c.succ.iter().map(|&k| omega_r.succ[k]).collect();
    Ok(CellPermutation {
        rows: omega_r.rows,
        cols: omega_r.cols,
        map,
    })
}

/// True when `p` (a permutation of `0..p.len()`) has exactly one orbit.
pub fn is_single_cycle(p: &[usize]) -> bool {
    if p.is_empty() {
        return false;
    }
    let mut k = p[0];
    let mut len = 1;
    while k != 0 {
        if k >= p.len() || len > p.len() {
            return false;
        }
        k = p[k];
        len += 1;
    }
    len == p.len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleOrderingPair {
    pub omega_r: CyclicOrdering,
    pub omega_c: CyclicOrdering,
    /// Orbit of the composite starting at the top-left cell.
    pub composition_cycle: Vec<Cell>,
}

impl CompatibleOrderingPair {
    /// The composite cycle written with array entries.
    pub fn element_cycle(&self, h: &HeffterArray) -> Vec<i64> {
        self.composition_cycle.iter().map(|&c| h.at(c)).collect()
    }
}

/// Row and column parts for an array with an odd number of columns
/// `2t + 1`: rows left to right; columns `1..=t+1` top to bottom and the rest
/// bottom to top.
fn odd_column_parts(rows: usize, cols: usize) -> (Vec<Vec<Cell>>, Vec<Vec<Cell>>) {
    let t = (cols - 1) / 2;
    let row_parts = (0..rows)
        .map(|i| (0..cols).map(|j| (i, j)).collect())
        .collect();
    let col_parts = (0..cols)
        .map(|j| {
            let mut part: Vec<Cell> = (0..rows).map(|i| (i, j)).collect();
            if j > t {
                part.reverse();
            }
            part
        })
        .collect();
    (row_parts, col_parts)
}

/// The standard compatible pair. With an even number of columns and an odd
/// number of rows the construction runs on the transpose: every column is
/// read top to bottom, the first `t + 1` rows left to right and the remaining
/// rows right to left.
pub fn compatible_orderings(h: &HeffterArray) -> Result<CompatibleOrderingPair> {
    let (m, n) = (h.rows(), h.cols());
    if m < 3 || n < 3 {
        return Err(Error::Shape(format!(
            "{m}x{n} array is too small for compatible orderings"
        )));
    }
    let (row_parts, col_parts) = if n % 2 == 1 {
        odd_column_parts(m, n)
    } else if m % 2 == 1 {
        let (t_rows, t_cols) = odd_column_parts(n, m);
        let flip = |parts: Vec<Vec<Cell>>| -> Vec<Vec<Cell>> {
            parts
                .into_iter()
                .map(|p| p.into_iter().map(|(i, j)| (j, i)).collect())
                .collect()
        };
        (flip(t_cols), flip(t_rows))
    } else {
        return Err(Error::NoCompatibleConstruction { rows: m, cols: n });
    };
    let omega_r = CyclicOrdering::new(m, n, Lines::Rows, row_parts)?;
    let omega_c = CyclicOrdering::new(m, n, Lines::Columns, col_parts)?;
    if let Some(k) = omega_r.first_non_simple(h) {
        return Err(Error::SimplicityLost {
            part: format!("row {}", k + 1),
        });
    }
    if let Some(k) = omega_c.first_non_simple(h) {
        return Err(Error::SimplicityLost {
            part: format!("column {}", k + 1),
        });
    }
    let composite = compose(&omega_r, &omega_c)?;
    let composition_cycle = composite.orbit((0, 0));
    Ok(CompatibleOrderingPair {
        omega_r,
        omega_c,
        composition_cycle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::h3::simple_h3;

    #[test]
    fn single_cycle_basics() {
        assert!(is_single_cycle(&[1, 2, 0]));
        assert!(!is_single_cycle(&[0, 1]));
        assert!(!is_single_cycle(&[]));
        assert!(is_single_cycle(&[0]));
    }

    #[test]
    fn n5_trajectory() {
        let h = simple_h3(5).unwrap();
        let pair = compatible_orderings(&h).unwrap();
        assert_eq!(pair.composition_cycle.len(), 15);
        // h11, h22, h33, then down once more after column t+1 = 3 (wrapping to row 1)
        assert_eq!(
            &pair.composition_cycle[..4],
            &[(0, 0), (1, 1), (2, 2), (0, 3)]
        );
        // columns 4 and 5 step up
        assert_eq!(pair.composition_cycle[4], (2, 4));
        let p = compose(&pair.omega_r, &pair.omega_c).unwrap();
        assert_eq!(p.apply((0, 0)), (1, 1));
        assert_eq!(p.apply((2, 2)), (0, 3));
        assert!(p.is_single_cycle());
    }

    #[test]
    fn even_columns_use_the_transpose() {
        let h = simple_h3(4).unwrap();
        let pair = compatible_orderings(&h).unwrap();
        assert_eq!(pair.composition_cycle.len(), 12);
        // every column top to bottom; rows 1-2 forward, row 3 backward
        assert_eq!(pair.omega_c.parts()[2], vec![(0, 2), (1, 2), (2, 2)]);
        assert_eq!(
            pair.omega_r.parts()[0],
            vec![(0, 0), (0, 1), (0, 2), (0, 3)]
        );
        assert_eq!(
            pair.omega_r.parts()[2],
            vec![(2, 3), (2, 2), (2, 1), (2, 0)]
        );
    }

    #[test]
    fn n7_is_one_orbit_of_length_21() {
        let h = simple_h3(7).unwrap();
        let pair = compatible_orderings(&h).unwrap();
        let p = compose(&pair.omega_r, &pair.omega_c).unwrap();
        assert!(p.is_single_cycle());
        assert_eq!(p.orbit((1, 3)).len(), 21);
    }

    #[test]
    fn both_even_has_no_construction() {
        let h = HeffterArray::from_rows(&[
            [1, 2, 3, 4],
            [5, 6, 7, 8],
            [9, 10, 11, 12],
            [13, 14, 15, 16],
        ])
        .unwrap();
        assert_eq!(
            compatible_orderings(&h),
            Err(Error::NoCompatibleConstruction { rows: 4, cols: 4 })
        );
    }

    #[test]
    fn degenerate_shapes_are_rejected() {
        let h = HeffterArray::from_rows(&[[1]]).unwrap();
        assert!(matches!(compatible_orderings(&h), Err(Error::Shape(_))));
    }

    #[test]
    fn non_simple_rows_are_reported() {
        let h = crate::h3::construct_raw_h3(8).unwrap();
        assert!(matches!(
            compatible_orderings(&h),
            Err(Error::SimplicityLost { .. })
        ));
    }

    #[test]
    fn mismatched_orderings() {
        let r = CyclicOrdering::natural(3, 5, Lines::Rows);
        let c = CyclicOrdering::natural(3, 4, Lines::Columns);
        assert!(matches!(compose(&r, &c), Err(Error::Mismatch(_))));
        assert!(matches!(compose(&c, &r), Err(Error::Mismatch(_))));
        let bad = CyclicOrdering::new(
            2,
            2,
            Lines::Rows,
            vec![vec![(0, 0), (1, 1)], vec![(1, 0), (0, 1)]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn single_column_composition_reduces_to_rows() {
        // with one row every column part is a fixed point
        let r = CyclicOrdering::natural(1, 3, Lines::Rows);
        let c = CyclicOrdering::natural(1, 3, Lines::Columns);
        let p = compose(&r, &c).unwrap();
        for j in 0..3 {
            assert_eq!(p.apply((0, j)), r.successor((0, j)));
        }
    }
}
