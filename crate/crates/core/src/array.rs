//! The Heffter array model: an `m x n` grid over a half-set of `Z_{2mn+1}`
//! whose rows and columns all sum to zero.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::modmath::{is_half_set, Modulus};

/// Zero-based `(row, column)` coordinates.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeffterArray {
    rows: usize,
    cols: usize,
    modulus: Modulus,
    cells: Vec<i64>,
}

impl HeffterArray {
    /// Builds an array from row vectors. Entries must be canonical nonzero
    /// residues modulo `2mn + 1`; the Heffter axioms themselves are left to
    /// [`HeffterArray::verify`].
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if m == 0 || n == 0 {
            return Err(Error::Shape(
                "array must have at least one row and column".into(),
            ));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.as_ref().len() != n) {
            return Err(Error::Shape(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                r.as_ref().len()
            )));
        }
        let modulus = Modulus::for_array(m, n)?;
        let mut cells = Vec::with_capacity(m * n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.as_ref().iter().enumerate() {
                if !modulus.is_canonical(x) {
                    return Err(Error::InvalidEntry {
                        row: i + 1,
                        col: j + 1,
                        value: x,
                        modulus: modulus.get(),
                    });
                }
                cells.push(x);
            }
        }
        Ok(HeffterArray {
            rows: m,
            cols: n,
            modulus,
            cells,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.cells[row * self.cols + col]
    }

    #[inline]
    pub fn at(&self, cell: Cell) -> i64 {
        self.get(cell.0, cell.1)
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> &[i64] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_partial_sums(&self, i: usize) -> Vec<u64> {
        self.modulus.partial_sums(self.row(i))
    }

    pub fn column_partial_sums(&self, j: usize) -> Vec<u64> {
        self.modulus.partial_sums(&self.column(j))
    }

    pub fn verify(&self) -> VerificationReport {
        let v = self.modulus;
        VerificationReport {
            row_sum_ok: (0..self.rows)
                .map(|i| v.sum(self.row(i).iter().copied()) == 0)
                .collect(),
            col_sum_ok: (0..self.cols).map(|j| v.sum(self.column(j)) == 0).collect(),
            half_set_ok: is_half_set(&self.cells, v),
            row_simple: (0..self.rows).map(|i| v.is_simple(self.row(i))).collect(),
            col_simple: (0..self.cols)
                .map(|j| v.is_simple(&self.column(j)))
                .collect(),
        }
    }

    pub fn is_heffter(&self) -> bool {
        self.verify().is_heffter()
    }

    /// Every row left to right and every column top to bottom is simple.
    pub fn is_simple(&self) -> bool {
        let v = self.modulus;
        (0..self.rows).all(|i| v.is_simple(self.row(i)))
            && (0..self.cols).all(|j| v.is_simple(&self.column(j)))
    }

    /// Column `perm[k]` of `self` becomes column `k` of the result.
    pub fn reorder_columns(&self, perm: &ColumnPermutation) -> Result<Self> {
        if perm.len() != self.cols {
            return Err(Error::InvalidPermutation(format!(
                "permutation has {} entries but the array has {} columns",
                perm.len(),
                self.cols
            )));
        }
        let mut cells = Vec::with_capacity(self.cells.len());
        for i in 0..self.rows {
            cells.extend(perm.as_slice().iter().map(|&a| self.get(i, a - 1)));
        }
        Ok(HeffterArray { cells, ..*self })
    }

    pub fn transpose(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.cols {
            cells.extend((0..self.rows).map(|i| self.get(i, j)));
        }
        HeffterArray {
            rows: self.cols,
            cols: self.rows,
            modulus: self.modulus,
            cells,
        }
    }
}

impl fmt::Display for HeffterArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .cells
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn verify_heffter(h: &HeffterArray) -> VerificationReport {
    h.verify()
}

pub fn is_simple_array(h: &HeffterArray) -> bool {
    h.is_simple()
}

pub fn reorder_columns(h: &HeffterArray, perm: &ColumnPermutation) -> Result<HeffterArray> {
    h.reorder_columns(perm)
}

pub fn transpose(h: &HeffterArray) -> HeffterArray {
    h.transpose()
}

/// Per-line outcome of the Heffter axioms and of simplicity under the
/// natural orders (rows left to right, columns top to bottom).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub row_sum_ok: Vec<bool>,
    pub col_sum_ok: Vec<bool>,
    pub half_set_ok: bool,
    pub row_simple: Vec<bool>,
    pub col_simple: Vec<bool>,
}

impl VerificationReport {
    pub fn is_heffter(&self) -> bool {
        self.half_set_ok && self.row_sum_ok.iter().all(|&b| b) && self.col_sum_ok.iter().all(|&b| b)
    }

    pub fn is_simple(&self) -> bool {
        self.row_simple.iter().all(|&b| b) && self.col_simple.iter().all(|&b| b)
    }
}

/// A reordering `(a_1, ..., a_n)` of columns, one-based: column `a_k` of the
/// source lands in column `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnPermutation(Vec<usize>);

impl ColumnPermutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n + 1];
        for &a in &order {
            if a == 0 || a > n {
                return Err(Error::InvalidPermutation(format!("{a} is not in 1..={n}")));
            }
            if seen[a] {
                return Err(Error::InvalidPermutation(format!("{a} appears twice")));
            }
            seen[a] = true;
        }
        Ok(ColumnPermutation(order))
    }

    pub fn identity(n: usize) -> Self {
        ColumnPermutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &a)| a == k + 1)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Display for ColumnPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for ColumnPermutation {
    type Err = Error;

    /// Accepts `1,2,6,8`, `(1,2,6,8)` or whitespace-separated indices.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let order = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("`{t}` is not a column index")))
            })
            .collect::<Result<Vec<_>>>()?;
        ColumnPermutation::new(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn h35() -> HeffterArray {
        HeffterArray::from_rows(&[
            [6, 7, -10, -4, 1],
            [-9, 5, 2, -11, 13],
            [3, -12, 8, 15, -14],
        ])
        .unwrap()
    }

    fn h33() -> HeffterArray {
        HeffterArray::from_rows(&[[-8, -2, -9], [7, -3, -4], [1, 5, -6]]).unwrap()
    }

    #[test]
    fn example_h35_verifies() {
        let r = h35().verify();
        assert!(r.is_heffter());
        assert_eq!(r.row_sum_ok.len(), 3);
        assert_eq!(r.col_sum_ok.len(), 5);
    }

    #[test]
    fn h33_is_simple_heffter() {
        let r = h33().verify();
        assert!(r.is_heffter());
        assert!(r.is_simple());
        assert!(h33().is_simple());
    }

    #[test]
    fn single_perturbation_breaks_half_set_and_sums() {
        let mut rows = h35().to_rows();
        rows[0][0] = 5;
        let r = HeffterArray::from_rows(&rows).unwrap().verify();
        assert!(!r.half_set_ok);
        assert!(!r.row_sum_ok[0]);
        assert!(!r.col_sum_ok[0]);
        assert!(r.row_sum_ok[1] && r.row_sum_ok[2]);
        assert!(r.col_sum_ok[1..].iter().all(|&b| b));
    }

    #[test]
    fn non_canonical_entries_are_rejected() {
        let err = HeffterArray::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 10]]).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidEntry {
                row: 3,
                col: 3,
                value: 10,
                ..
            }
        ));
        let err = HeffterArray::from_rows(&[[0, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap_err();
        assert!(matches!(err, Error::InvalidEntry { row: 1, col: 1, .. }));
        assert!(HeffterArray::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn reorder_gathers_columns() {
        let perm: ColumnPermutation = "(5,3,1,4,2)".parse().unwrap();
        let h = h35().reorder_columns(&perm).unwrap();
        assert_eq!(h.row(0), &[1, -10, 6, -4, 7]);
        assert!(h.is_heffter());
        assert_eq!(
            h35()
                .reorder_columns(&ColumnPermutation::identity(5))
                .unwrap(),
            h35()
        );
    }

    #[test]
    fn bad_permutations() {
        assert!(ColumnPermutation::new(vec![1, 1, 2]).is_err());
        assert!(ColumnPermutation::new(vec![0, 1]).is_err());
        assert!("1,2,x".parse::<ColumnPermutation>().is_err());
        let p = ColumnPermutation::new(vec![2, 1]).unwrap();
        assert!(matches!(
            h35().reorder_columns(&p),
            Err(Error::InvalidPermutation(_))
        ));
        assert_eq!(
            "1 3 2".parse::<ColumnPermutation>().unwrap().to_string(),
            "(1,3,2)"
        );
    }

    #[test]
    fn transpose_round_trip() {
        let t = h35().transpose();
        assert_eq!((t.rows(), t.cols()), (5, 3));
        assert_eq!(t.modulus(), h35().modulus());
        assert_eq!(t.transpose(), h35());
        let t3 = h33().transpose();
        assert!(t3.is_heffter());
        assert_eq!(t3.row(0), &[-8, 7, 1]);
    }

    #[test]
    fn transpose_swaps_report_flags() {
        let h = HeffterArray::from_rows(&[
            [-13, -11, 6, 3, 10, -8, 14, -1],
            [4, -7, 17, 19, 5, -16, -2, -20],
            [9, 18, -23, -22, -15, 24, -12, 21],
        ])
        .unwrap();
        let a = h.verify();
        let b = h.transpose().verify();
        assert_eq!(a.row_sum_ok, b.col_sum_ok);
        assert_eq!(a.col_sum_ok, b.row_sum_ok);
        assert_eq!(a.row_simple, b.col_simple);
        assert_eq!(a.col_simple, b.row_simple);
        assert_eq!(a.half_set_ok, b.half_set_ok);
        assert!(!a.row_simple[0]);
        assert!(!h.is_simple());
    }
}
