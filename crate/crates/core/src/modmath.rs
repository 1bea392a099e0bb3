//! Arithmetic in the cyclic group of odd order `v`.
//!
//! Elements are written in the symmetric range `-(v-1)/2 ..= (v-1)/2`; a
//! half-set keeps exactly one of `x` and `-x` for every nonzero class.
//! Partial sums are reported as least nonnegative residues.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted. Every product used here stays well inside `i64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(v: u64) -> Result<Self> {
        if v < 3 || v.is_multiple_of(2) || v > MAX_MODULUS {
            return Err(Error::InvalidModulus(v));
        }
        Ok(Modulus(v))
    }

    /// The modulus `2mn + 1` attached to an `m x n` Heffter array.
    pub fn for_array(rows: usize, cols: usize) -> Result<Self> {
        let v = (rows as u64)
            .checked_mul(cols as u64)
            .and_then(|p| p.checked_mul(2))
            .and_then(|p| p.checked_add(1))
            .ok_or_else(|| Error::Shape(format!("{rows}x{cols} is too large")))?;
        Modulus::new(v)
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `(v - 1) / 2`, the size of a half-set and the largest canonical value.
    #[inline]
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }

    /// Least nonnegative representative of `x`.
    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    /// Symmetric representative of `x`, which may be zero.
    #[inline]
    pub fn symmetric(self, x: i64) -> i64 {
        let r = self.reduce(x) as i64;
        if r as u64 > self.half() {
            r - self.0 as i64
        } else {
            r
        }
    }

    #[inline]
    pub fn is_canonical(self, x: i64) -> bool {
        x != 0 && x.unsigned_abs() <= self.half()
    }

    pub fn canon(self, x: i64) -> Result<Residue> {
        match self.symmetric(x) {
            0 => Err(Error::ZeroResidue {
                value: x,
                modulus: self.0,
            }),
            value => Ok(Residue {
                value,
                modulus: self,
            }),
        }
    }

    /// Running sums `s_1, ..., s_k` of `values`, reduced into `0..v`.
    pub fn partial_sums(self, values: &[i64]) -> Vec<u64> {
        let mut acc = 0u64;
        values
            .iter()
            .map(|&x| {
                acc = (acc + self.reduce(x)) % self.0;
                acc
            })
            .collect()
    }

    /// True when the partial sums of `values` are pairwise distinct.
    pub fn is_simple(self, values: &[i64]) -> bool {
        let mut sums = self.partial_sums(values);
        sums.sort_unstable();
        sums.windows(2).all(|w| w[0] != w[1])
    }

    pub fn sum(self, values: impl IntoIterator<Item = i64>) -> u64 {
        values
            .into_iter()
            .fold(0u64, |acc, x| (acc + self.reduce(x)) % self.0)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A nonzero class written by its symmetric representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: i64,
    modulus: Modulus,
}

impl Residue {
    #[inline]
    pub fn value(self) -> i64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn canon(x: i64, v: Modulus) -> Result<Residue> {
    v.canon(x)
}

/// Whether `values` is a half-set of `Z_v`: `(v-1)/2` canonical entries with
/// no absolute value repeated.
pub fn is_half_set(values: &[i64], v: Modulus) -> bool {
    if values.len() as u64 != v.half() {
        return false;
    }
    let mut seen = vec![false; v.half() as usize + 1];
    for &x in values {
        if !v.is_canonical(x) {
            return false;
        }
        let a = x.unsigned_abs() as usize;
        if seen[a] {
            return false;
        }
        seen[a] = true;
    }
    true
}

/// Partial sums of a sequence of residues that must share one modulus.
pub fn partial_sums(seq: &[Residue]) -> Result<Vec<u64>> {
    let Some(first) = seq.first() else {
        return Ok(Vec::new());
    };
    let v = first.modulus;
    if let Some(other) = seq.iter().find(|r| r.modulus != v) {
        return Err(Error::ModulusMismatch {
            left: v.get(),
            right: other.modulus.get(),
        });
    }
    let values: Vec<i64> = seq.iter().map(|r| r.value).collect();
    Ok(v.partial_sums(&values))
}

pub fn is_simple(values: &[i64], v: Modulus) -> bool {
    v.is_simple(values)
}
