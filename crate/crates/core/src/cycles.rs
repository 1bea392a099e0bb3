//! Cyclic cycle systems developed from simply ordered Heffter systems.
//!
//! A part `(x_1, ..., x_k)` with partial sums `s_1, ..., s_{k-1}, 0` gives the
//! base cycle `(0, s_1, ..., s_{k-1})`; its `v` translates are the cycles of
//! the system.

use std::collections::HashSet;

use crate::array::HeffterArray;
use crate::error::{Error, Result};
use crate::modmath::{is_half_set, Modulus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSystem {
    pub v: u64,
    pub k: usize,
    pub cycles: Vec<Vec<u64>>,
}

/// Outcome of the brute-force pair count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCoverage {
    pub pairs: u64,
    pub uncovered: u64,
    pub over_covered: u64,
}

impl PairCoverage {
    pub fn is_exact(&self) -> bool {
        self.uncovered == 0 && self.over_covered == 0
    }
}

impl CycleSystem {
    /// Counts, over every unordered pair of `Z_v`, the cycles using it as an edge.
    pub fn pair_coverage(&self) -> PairCoverage {
        let v = self.v as usize;
        let mut count = vec![0u32; v * v];
        for cycle in &self.cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                let b = cycle[(idx + 1) % cycle.len()];
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                count[lo as usize * v + hi as usize] += 1;
            }
        }
        let mut cov = PairCoverage {
            pairs: 0,
            uncovered: 0,
            over_covered: 0,
        };
        for a in 0..v {
            for b in a + 1..v {
                cov.pairs += 1;
                match count[a * v + b] {
                    0 => cov.uncovered += 1,
                    1 => {}
                    _ => cov.over_covered += 1,
                }
            }
        }
        cov
    }

    /// Every cycle has `k` distinct vertices.
    pub fn all_simple(&self) -> bool {
        self.cycles.iter().all(|c| {
            let set: HashSet<u64> = c.iter().copied().collect();
            c.len() == self.k && set.len() == self.k
        })
    }

    /// Closed under `x -> x + 1`, comparing cycles up to rotation.
    pub fn is_cyclic(&self) -> bool {
        let keys: HashSet<Vec<u64>> = self.cycles.iter().map(|c| canonical_rotation(c)).collect();
        self.cycles.iter().all(|c| {
            let shifted: Vec<u64> = c.iter().map(|&x| (x + 1) % self.v).collect();
            keys.contains(&canonical_rotation(&shifted))
        })
    }
}

/// The rotation of `cycle` that starts at its least vertex.
pub fn canonical_rotation(cycle: &[u64]) -> Vec<u64> {
    let Some(start) = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &x)| x)
        .map(|(i, _)| i)
    else {
        return Vec::new();
    };
    cycle[start..]
        .iter()
        .chain(&cycle[..start])
        .copied()
        .collect()
}

/// `(0, s_1, ..., s_{k-1})` for one ordered part.
pub fn base_cycle(part: &[i64], v: Modulus) -> Vec<u64> {
    let sums = v.partial_sums(part);
    std::iter::once(0)
        .chain(sums[..sums.len().saturating_sub(1)].iter().copied())
        .collect()
}

/// Develops every ordered part modulo `v`.
pub fn develop_cycles(parts: &[Vec<i64>], v: Modulus) -> Result<CycleSystem> {
    let k = parts.first().map_or(0, Vec::len);
    if k < 3 || parts.iter().any(|p| p.len() != k) {
        return Err(Error::NotHeffter(
            "parts must share one length of at least 3".into(),
        ));
    }
    let all: Vec<i64> = parts.iter().flatten().copied().collect();
    if !is_half_set(&all, v) {
        return Err(Error::NotHeffter(format!(
            "parts do not form a half-set of Z_{v}"
        )));
    }
    for (idx, part) in parts.iter().enumerate() {
        if v.sum(part.iter().copied()) != 0 {
            return Err(Error::NotHeffter(format!(
                "part {} does not sum to 0",
                idx + 1
            )));
        }
        if !v.is_simple(part) {
            return Err(Error::NotSimple { part: idx + 1 });
        }
    }
    let n = v.get();
    let mut seen = HashSet::new();
    let mut cycles = Vec::with_capacity(parts.len() * n as usize);
    for part in parts {
        let base = base_cycle(part, v);
        for t in 0..n {
            let c: Vec<u64> = base.iter().map(|&x| (x + t) % n).collect();
            if seen.insert(canonical_rotation(&c)) {
                cycles.push(c);
            }
        }
    }
    Ok(CycleSystem { v: n, k, cycles })
}

/// Rows read left to right.
pub fn develop_rows(h: &HeffterArray) -> Result<CycleSystem> {
    let parts: Vec<Vec<i64>> = (0..h.rows()).map(|i| h.row(i).to_vec()).collect();
    develop_cycles(&parts, h.modulus())
}

/// Columns read top to bottom.
pub fn develop_columns(h: &HeffterArray) -> Result<CycleSystem> {
    let parts: Vec<Vec<i64>> = (0..h.cols()).map(|j| h.column(j)).collect();
    develop_cycles(&parts, h.modulus())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::h3::simple_h3;

    #[test]
    fn single_triangle_in_z7() {
        let v = Modulus::new(7).unwrap();
        let cs = develop_cycles(&[vec![1, 2, -3]], v).unwrap();
        assert_eq!(cs.cycles[0], vec![0, 1, 3]);
        assert_eq!(cs.cycles.len(), 7);
        let cov = cs.pair_coverage();
        assert_eq!(cov.pairs, 21);
        assert!(cov.is_exact());
        assert!(cs.is_cyclic());
    }

    #[test]
    fn columns_of_h33_give_a_cyclic_sts19() {
        let cs = develop_columns(&simple_h3(3).unwrap()).unwrap();
        assert_eq!(cs.cycles.len(), 57);
        assert_eq!(cs.pair_coverage().pairs, 171);
        assert!(cs.pair_coverage().is_exact());
        assert!(cs.all_simple() && cs.is_cyclic());
    }

    #[test]
    fn rows_of_simple_h35() {
        let cs = develop_rows(&simple_h3(5).unwrap()).unwrap();
        assert_eq!(cs.cycles.len(), 93);
        assert_eq!(cs.k, 5);
        assert_eq!(cs.pair_coverage().pairs, 465);
        assert!(cs.pair_coverage().is_exact());
    }

    #[test]
    fn rejects_bad_parts() {
        let v = Modulus::new(7).unwrap();
        assert!(matches!(
            develop_cycles(&[vec![1, 2, 3]], v),
            Err(Error::NotHeffter(_))
        ));
        let v = Modulus::new(49).unwrap();
        let raw = crate::h3::construct_raw_h3(8).unwrap();
        let parts: Vec<Vec<i64>> = (0..3).map(|i| raw.row(i).to_vec()).collect();
        assert_eq!(develop_cycles(&parts, v), Err(Error::NotSimple { part: 1 }));
    }

    #[test]
    fn canonical_rotation_starts_at_minimum() {
        assert_eq!(canonical_rotation(&[5, 2, 9]), vec![2, 9, 5]);
        assert_eq!(canonical_rotation(&[]), Vec::<u64>::new());
    }
}
