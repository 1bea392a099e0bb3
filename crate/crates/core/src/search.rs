//! Column reorderings that make every row simple, and a small backtracking
//! generator of Heffter arrays.
//!
//! One permutation is applied to all rows at once, so columns move as units
//! and stay simple top to bottom. The pruned search extends the column order
//! one column at a time and keeps, per row, the set of partial sums seen so
//! far; a repeat can never be undone by a longer prefix, so the prune is exact.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::array::{ColumnPermutation, HeffterArray, VerificationReport};
use crate::error::{Error, Result};
use crate::modmath::Modulus;

/// Largest column count accepted by the brute-force oracle.
pub const ORACLE_MAX_COLS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Enumerate complete column orders and test each one.
    Exhaustive,
    /// Depth-first with the partial-sum prune.
    Backtracking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub strategy: Strategy,
    pub node_budget: u64,
    /// Randomised restarts for the generator; `None` is fully deterministic.
    pub seed: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            strategy: Strategy::Backtracking,
            node_budget: 50_000_000,
            seed: None,
        }
    }
}

impl SearchConfig {
    fn check(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::OutOfRange {
                what: "node budget",
                detail: "must be positive".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub permutation: ColumnPermutation,
    pub nodes: u64,
    /// Verification of the reordered array, recomputed from scratch.
    pub report: VerificationReport,
}

struct RowState {
    v: u64,
    /// `seen[i * v + s]`: row `i` has partial sum `s` on the current prefix.
    seen: Vec<bool>,
    sums: Vec<u64>,
}

impl RowState {
    fn new(rows: usize, v: Modulus) -> Self {
        let v = v.get();
        let mut seen = vec![false; rows * v as usize];
        // an intermediate sum of 0 would collide with the final one
        for i in 0..rows {
            seen[i * v as usize] = true;
        }
        RowState {
            v,
            seen,
            sums: vec![0; rows],
        }
    }

    /// Appends column `j`; on a collision nothing changes and `false` is returned.
    fn push(&mut self, h: &HeffterArray, j: usize, last: bool) -> bool {
        let m = h.rows();
        let v = self.v;
        let next: Vec<u64> = (0..m)
            .map(|i| (self.sums[i] + h.modulus().reduce(h.get(i, j))) % v)
            .collect();
        if !last && (0..m).any(|i| self.seen[i * v as usize + next[i] as usize]) {
            return false;
        }
        if !last {
            for (i, &s) in next.iter().enumerate() {
                self.seen[i * v as usize + s as usize] = true;
            }
        }
        self.sums = next;
        true
    }

    fn pop(&mut self, h: &HeffterArray, j: usize, last: bool) {
        let v = self.v;
        for i in 0..h.rows() {
            if !last {
                self.seen[i * v as usize + self.sums[i] as usize] = false;
            }
            self.sums[i] = (self.sums[i] + v - h.modulus().reduce(h.get(i, j))) % v;
        }
    }
}

fn check_input(h: &HeffterArray) -> Result<()> {
    let report = h.verify();
    if !report.is_heffter() {
        return Err(Error::NotHeffter("input is not a Heffter array".into()));
    }
    if let Some(j) = (0..h.cols()).find(|&j| !h.modulus().is_simple(&h.column(j))) {
        return Err(Error::Unsupported(format!(
            "column {} is not simple top to bottom, so no column order can help",
            j + 1
        )));
    }
    Ok(())
}

struct Dfs<'a> {
    h: &'a HeffterArray,
    state: RowState,
    used: Vec<bool>,
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
    prune: bool,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Dfs<'_> {
    fn run(&mut self, on_leaf: &mut dyn FnMut(&[usize]) -> bool) -> Step {
        let n = self.h.cols();
        if self.order.len() == n {
            return if on_leaf(&self.order) {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        for j in 0..n {
            if self.used[j] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            let last = self.order.len() + 1 == n;
            if self.prune && !self.state.push(self.h, j, last) {
                continue;
            }
            self.used[j] = true;
            self.order.push(j);
            let step = self.run(on_leaf);
            self.order.pop();
            self.used[j] = false;
            if self.prune {
                self.state.pop(self.h, j, last);
            }
            match step {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn to_permutation(order: &[usize]) -> ColumnPermutation {
    ColumnPermutation::new(order.iter().map(|&j| j + 1).collect())
        .expect("search yields a permutation")
}

fn rows_simple(h: &HeffterArray, order: &[usize]) -> bool {
    (0..h.rows()).all(|i| {
        let row: Vec<i64> = order.iter().map(|&j| h.get(i, j)).collect();
        h.modulus().is_simple(&row)
    })
}

/// The lexicographically least column order making every row simple.
pub fn find_simple_column_permutation(
    h: &HeffterArray,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    cfg.check()?;
    check_input(h)?;
    search_unchecked(h, cfg)
}

/// Row sums must vanish; nothing else is assumed.
fn search_unchecked(h: &HeffterArray, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let prune = cfg.strategy == Strategy::Backtracking;
    let mut dfs = Dfs {
        h,
        state: RowState::new(h.rows(), h.modulus()),
        used: vec![false; h.cols()],
        order: Vec::with_capacity(h.cols()),
        nodes: 0,
        budget: cfg.node_budget,
        prune,
    };
    let mut found = None;
    let step = dfs.run(&mut |order| {
        if rows_simple(h, order) {
            found = Some(order.to_vec());
            true
        } else {
            false
        }
    });
    match step {
        Step::Found => {
            let permutation = to_permutation(&found.expect("leaf recorded"));
            let reordered = h.reorder_columns(&permutation)?;
            let report = reordered.verify();
            if !(0..h.rows()).all(|i| h.modulus().is_simple(reordered.row(i))) {
                return Err(Error::Mismatch(format!(
                    "{permutation} failed re-verification"
                )));
            }
            Ok(SearchOutcome {
                permutation,
                nodes: dfs.nodes,
                report,
            })
        }
        Step::Exhausted => Err(Error::NoneExists),
        Step::OutOfBudget => Err(Error::BudgetExceeded {
            budget: cfg.node_budget,
        }),
    }
}

/// Every column order the pruned search accepts, in lexicographic order.
pub fn all_simple_column_permutations(
    h: &HeffterArray,
    node_budget: u64,
) -> Result<Vec<ColumnPermutation>> {
    check_input(h)?;
    let mut dfs = Dfs {
        h,
        state: RowState::new(h.rows(), h.modulus()),
        used: vec![false; h.cols()],
        order: Vec::with_capacity(h.cols()),
        nodes: 0,
        budget: node_budget,
        prune: true,
    };
    let mut out = Vec::new();
    match dfs.run(&mut |order| {
        out.push(to_permutation(order));
        false
    }) {
        Step::OutOfBudget => Err(Error::BudgetExceeded {
            budget: node_budget,
        }),
        _ => Ok(out),
    }
}

/// Tries all `n!` column orders and keeps those whose reordered array is simple.
pub fn brute_force_oracle(h: &HeffterArray) -> Result<Vec<ColumnPermutation>> {
    if h.cols() > ORACLE_MAX_COLS {
        return Err(Error::TooLarge(format!(
            "{} columns, the oracle stops at {ORACLE_MAX_COLS}",
            h.cols()
        )));
    }
    let mut out: Vec<ColumnPermutation> = (1..=h.cols())
        .permutations(h.cols())
        .map(|p| ColumnPermutation::new(p).expect("permutation"))
        .filter(|p| h.reorder_columns(p).is_ok_and(|r| r.is_simple()))
        .collect();
    out.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    Ok(out)
}

/// Cells in fill order, each with how its value is obtained.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Free(usize, usize),
    /// Closes a row.
    RowForced(usize, usize),
    /// Closes a column.
    ColForced(usize, usize),
}

fn fill_order(m: usize, n: usize) -> Vec<Slot> {
    let mut order = Vec::with_capacity(m * n);
    for i in 0..m - 2 {
        for j in 0..n - 1 {
            order.push(Slot::Free(i, j));
        }
        order.push(Slot::RowForced(i, n - 1));
    }
    for j in 0..n - 1 {
        order.push(Slot::Free(m - 2, j));
        order.push(Slot::ColForced(m - 1, j));
    }
    order.push(Slot::RowForced(m - 2, n - 1));
    order.push(Slot::ColForced(m - 1, n - 1));
    order
}

struct Gen<'a> {
    m: usize,
    n: usize,
    v: Modulus,
    slots: &'a [Slot],
    values: &'a [i64],
    cells: Vec<i64>,
    used: Vec<bool>,
    row_sum: Vec<u64>,
    col_sum: Vec<u64>,
    /// Partial sums seen down each column, for simplicity.
    col_seen: Vec<Vec<u64>>,
    nodes: u64,
    limit: u64,
}

impl Gen<'_> {
    fn place(&mut self, i: usize, j: usize, x: i64) -> bool {
        let a = x.unsigned_abs() as usize;
        if x == 0 || a as u64 > self.v.half() || self.used[a] {
            return false;
        }
        let s = (self.col_sum[j] + self.v.reduce(x)) % self.v.get();
        if i + 1 < self.m && (s == 0 || self.col_seen[j].contains(&s)) {
            return false;
        }
        self.used[a] = true;
        self.cells[i * self.n + j] = x;
        self.row_sum[i] = (self.row_sum[i] + self.v.reduce(x)) % self.v.get();
        self.col_sum[j] = s;
        self.col_seen[j].push(s);
        true
    }

    fn unplace(&mut self, i: usize, j: usize) {
        let x = self.cells[i * self.n + j];
        let v = self.v.get();
        self.used[x.unsigned_abs() as usize] = false;
        self.row_sum[i] = (self.row_sum[i] + v - self.v.reduce(x)) % v;
        self.col_sum[j] = (self.col_sum[j] + v - self.v.reduce(x)) % v;
        self.col_seen[j].pop();
        self.cells[i * self.n + j] = 0;
    }

    /// `Some(true)` on success, `Some(false)` when exhausted, `None` out of budget.
    fn run(&mut self, k: usize) -> Option<bool> {
        if k == self.slots.len() {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return None;
        }
        let forced = |sum: u64| self.v.symmetric(-(sum as i64));
        let (i, j, choices): (usize, usize, Vec<i64>) = match self.slots[k] {
            Slot::Free(i, j) => (i, j, self.values.to_vec()),
            Slot::RowForced(i, j) => (i, j, vec![forced(self.row_sum[i])]),
            Slot::ColForced(i, j) => (i, j, vec![forced(self.col_sum[j])]),
        };
        for x in choices {
            if !self.place(i, j, x) {
                continue;
            }
            let r = self.run(k + 1);
            if r != Some(false) {
                if r.is_none() {
                    self.unplace(i, j);
                }
                return r;
            }
            self.unplace(i, j);
        }
        Some(false)
    }
}

/// A Heffter array of the given shape whose columns are simple top to bottom.
///
/// Without a seed the search is a single deterministic depth-first pass. With
/// a seed it restarts with a freshly shuffled value order every
/// [`RESTART_NODES`] nodes until the budget runs out.
pub fn generate_heffter(m: usize, n: usize, cfg: &SearchConfig) -> Result<HeffterArray> {
    cfg.check()?;
    if m < 3 || n < 3 {
        return Err(Error::Shape(format!(
            "{m}x{n}: both sides must be at least 3"
        )));
    }
    let v = Modulus::for_array(m, n)?;
    let half = v.half() as i64;
    let mut values: Vec<i64> = (1..=half).rev().flat_map(|a| [a, -a]).collect();
    let slots = fill_order(m, n);
    let mut rng = cfg.seed.map(ChaCha8Rng::seed_from_u64);
    let mut spent = 0u64;
    while spent < cfg.node_budget {
        let limit = match rng {
            Some(_) => RESTART_NODES.min(cfg.node_budget - spent),
            None => cfg.node_budget,
        };
        if let Some(rng) = rng.as_mut() {
            values.shuffle(rng);
        }
        let mut g = Gen {
            m,
            n,
            v,
            slots: &slots,
            values: &values,
            cells: vec![0; m * n],
            used: vec![false; half as usize + 1],
            row_sum: vec![0; m],
            col_sum: vec![0; n],
            col_seen: vec![Vec::with_capacity(m); n],
            nodes: 0,
            limit,
        };
        match g.run(0) {
            Some(true) => {
                let rows: Vec<&[i64]> = g.cells.chunks(n).collect();
                let h = HeffterArray::from_rows(&rows)?;
                if !h.is_heffter() {
                    return Err(Error::Mismatch(
                        "generated array failed verification".into(),
                    ));
                }
                return Ok(h);
            }
            Some(false) => return Err(Error::NoneExists),
            None => spent += limit,
        }
    }
    Err(Error::BudgetExceeded {
        budget: cfg.node_budget,
    })
}

/// Nodes per randomised restart of the generator.
pub const RESTART_NODES: u64 = 20_000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::h3::{construct_raw_h3, H33, H34, N8_REORDERING};

    fn h35() -> HeffterArray {
        HeffterArray::from_rows(&[
            [6, 7, -10, -4, 1],
            [-9, 5, 2, -11, 13],
            [3, -12, 8, 15, -14],
        ])
        .unwrap()
    }

    #[test]
    fn already_simple_gives_identity() {
        let h = HeffterArray::from_rows(&H34).unwrap();
        let out = find_simple_column_permutation(&h, &SearchConfig::default()).unwrap();
        assert!(out.permutation.is_identity());
        assert!(out.report.is_simple());
    }

    #[test]
    fn raw_h38_is_repaired() {
        let h = construct_raw_h3(8).unwrap();
        assert!(!h.is_simple());
        let out = find_simple_column_permutation(&h, &SearchConfig::default()).unwrap();
        assert!(h.reorder_columns(&out.permutation).unwrap().is_simple());
        let oracle = brute_force_oracle(&h).unwrap();
        assert_eq!(oracle[0], out.permutation);
        let known = ColumnPermutation::new(N8_REORDERING.to_vec()).unwrap();
        assert!(oracle.contains(&known));
    }

    #[test]
    fn strategies_agree_on_small_examples() {
        for h in [
            h35(),
            construct_raw_h3(8).unwrap(),
            HeffterArray::from_rows(&H33).unwrap(),
        ] {
            let a = find_simple_column_permutation(&h, &SearchConfig::default()).unwrap();
            let cfg = SearchConfig {
                strategy: Strategy::Exhaustive,
                ..SearchConfig::default()
            };
            let b = find_simple_column_permutation(&h, &cfg).unwrap();
            assert_eq!(a.permutation, b.permutation);
            assert!(a.nodes <= b.nodes);
            assert_eq!(
                all_simple_column_permutations(&h, u64::MAX).unwrap(),
                brute_force_oracle(&h).unwrap()
            );
        }
    }

    #[test]
    fn h35_example_permutation_is_valid() {
        let oracle = brute_force_oracle(&h35()).unwrap();
        assert!(oracle.contains(&"(5,3,1,4,2)".parse().unwrap()));
        let h33 = HeffterArray::from_rows(&H33).unwrap();
        assert!(brute_force_oracle(&h33)
            .unwrap()
            .contains(&ColumnPermutation::identity(3)));
    }

    #[test]
    fn budget_and_size_errors() {
        let h = construct_raw_h3(8).unwrap();
        let cfg = SearchConfig {
            node_budget: 3,
            ..SearchConfig::default()
        };
        assert_eq!(
            find_simple_column_permutation(&h, &cfg),
            Err(Error::BudgetExceeded { budget: 3 })
        );
        let zero = SearchConfig {
            node_budget: 0,
            ..SearchConfig::default()
        };
        assert!(find_simple_column_permutation(&h, &zero).is_err());
        let big = crate::h3::simple_h3(10).unwrap();
        assert!(matches!(brute_force_oracle(&big), Err(Error::TooLarge(_))));
    }

    #[test]
    fn proven_absence_is_distinct_from_budget() {
        // every order of 1, -1, 1, -1 has a zero-sum block
        let h = HeffterArray::from_rows(&[[1, -1, 1, -1]]).unwrap();
        for strategy in [Strategy::Backtracking, Strategy::Exhaustive] {
            let cfg = SearchConfig {
                strategy,
                ..SearchConfig::default()
            };
            assert_eq!(search_unchecked(&h, &cfg), Err(Error::NoneExists));
        }
    }

    #[test]
    fn non_heffter_input_is_rejected() {
        let h = HeffterArray::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        assert!(matches!(
            find_simple_column_permutation(&h, &SearchConfig::default()),
            Err(Error::NotHeffter(_))
        ));
    }

    #[test]
    fn generator_small_shapes() {
        for (m, n) in [(3, 3), (3, 4), (5, 4), (4, 5), (5, 5)] {
            let h = generate_heffter(m, n, &SearchConfig::default()).unwrap();
            assert_eq!((h.rows(), h.cols()), (m, n));
            assert!(h.is_heffter());
            assert!((0..n).all(|j| h.modulus().is_simple(&h.column(j))));
        }
        assert!(matches!(
            generate_heffter(2, 2, &SearchConfig::default()),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let cfg = SearchConfig {
            seed: Some(7),
            ..SearchConfig::default()
        };
        let a = generate_heffter(5, 6, &cfg).unwrap();
        let b = generate_heffter(5, 6, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.is_heffter());
    }
}
