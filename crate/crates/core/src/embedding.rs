//! The two-coloured face set of `K_v` carried by a simple Heffter array with
//! compatible orderings, the rotation system it induces, and an Euler
//! characteristic certificate.
//!
//! Faces are stored as base walks through `0`; the full face set is their
//! `v` translates. Row faces follow the row ordering forward and column faces
//! follow the column ordering backward, so an arc `(x, x + d)` lies on a row
//! face when `d` is an entry and on a column face when `-d` is.

use rayon::prelude::*;

use crate::array::HeffterArray;
use crate::cycles::base_cycle;
use crate::error::{Error, Result};
use crate::modmath::Modulus;
use crate::orderings::{CompatibleOrderingPair, CyclicOrdering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Colour {
    /// Faces of length `n`, one base face per row.
    Row,
    /// Faces of length `m`, one base face per column.
    Column,
}

/// Which colour class is traced against its ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    ColumnsReversed,
    RowsReversed,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::ColumnsReversed => "columns-reversed",
            Convention::RowsReversed => "rows-reversed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseFace {
    pub colour: Colour,
    /// 0-based row or column index.
    pub part: usize,
    pub walk: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    v: Modulus,
    rows: usize,
    cols: usize,
    convention: Convention,
    base: Vec<BaseFace>,
    entries: Vec<i64>,
}

impl FaceSet {
    pub fn modulus(&self) -> Modulus {
        self.v
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn base_faces(&self) -> &[BaseFace] {
        &self.base
    }

    pub fn face_count(&self, colour: Colour) -> u64 {
        self.base.iter().filter(|f| f.colour == colour).count() as u64 * self.v.get()
    }

    pub fn total_faces(&self) -> u64 {
        self.base.len() as u64 * self.v.get()
    }

    /// Every face, base faces first translated by 0, then by 1, and so on.
    pub fn faces(&self) -> impl Iterator<Item = (Colour, Vec<u64>)> + '_ {
        let v = self.v.get();
        (0..v).flat_map(move |t| {
            self.base
                .iter()
                .map(move |f| (f.colour, f.walk.iter().map(|&x| (x + t) % v).collect()))
        })
    }

    /// Explicit arc and edge count over all faces.
    pub fn coverage(&self) -> Coverage {
        let v = self.v.get() as usize;
        let mut arcs = vec![0u8; v * v];
        let mut row_edges = vec![0u8; v * v];
        let mut col_edges = vec![0u8; v * v];
        for (colour, walk) in self.faces() {
            let edges = match colour {
                Colour::Row => &mut row_edges,
                Colour::Column => &mut col_edges,
            };
            for (i, &a) in walk.iter().enumerate() {
                let b = walk[(i + 1) % walk.len()];
                let (a, b) = (a as usize, b as usize);
                arcs[a * v + b] = arcs[a * v + b].saturating_add(1);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                edges[lo * v + hi] = edges[lo * v + hi].saturating_add(1);
            }
        }
        let mut cov = Coverage::default();
        for a in 0..v {
            for b in 0..v {
                if a == b {
                    continue;
                }
                match arcs[a * v + b] {
                    1 => {}
                    0 => cov.arcs_missing += 1,
                    _ => cov.arcs_repeated += 1,
                }
                if a < b {
                    cov.edges += 1;
                    if row_edges[a * v + b] != 1 {
                        cov.row_colour_faults += 1;
                    }
                    if col_edges[a * v + b] != 1 {
                        cov.column_colour_faults += 1;
                    }
                }
            }
        }
        cov
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Coverage {
    pub edges: u64,
    pub arcs_missing: u64,
    pub arcs_repeated: u64,
    pub row_colour_faults: u64,
    pub column_colour_faults: u64,
}

impl Coverage {
    pub fn arcs_exact(&self) -> bool {
        self.arcs_missing == 0 && self.arcs_repeated == 0
    }

    pub fn two_coloured(&self) -> bool {
        self.row_colour_faults == 0 && self.column_colour_faults == 0
    }
}

fn walks(
    h: &HeffterArray,
    ordering: &CyclicOrdering,
    colour: Colour,
    reverse: bool,
) -> Vec<BaseFace> {
    (0..ordering.parts().len())
        .map(|k| {
            let mut walk = base_cycle(&ordering.values(h, k), h.modulus());
            if reverse {
                walk[1..].reverse();
            }
            BaseFace {
                colour,
                part: k,
                walk,
            }
        })
        .collect()
}

/// Builds the face set under one explicit convention.
pub fn build_face_set_with(
    h: &HeffterArray,
    pair: &CompatibleOrderingPair,
    convention: Convention,
) -> Result<FaceSet> {
    if pair.omega_r.shape() != (h.rows(), h.cols()) {
        return Err(Error::Mismatch(format!(
            "orderings are {:?}, array is {}x{}",
            pair.omega_r.shape(),
            h.rows(),
            h.cols()
        )));
    }
    let reverse_cols = convention == Convention::ColumnsReversed;
    let mut base = walks(h, &pair.omega_r, Colour::Row, !reverse_cols);
    base.extend(walks(h, &pair.omega_c, Colour::Column, reverse_cols));
    for f in &base {
        let mut sorted = f.walk.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            let what = match f.colour {
                Colour::Row => "row",
                Colour::Column => "column",
            };
            return Err(Error::NotAnEmbedding(format!(
                "{what} {} face repeats a vertex",
                f.part + 1
            )));
        }
    }
    let faces = FaceSet {
        v: h.modulus(),
        rows: h.rows(),
        cols: h.cols(),
        convention,
        base,
        entries: h.entries().to_vec(),
    };
    let cov = faces.coverage();
    if !cov.arcs_exact() {
        return Err(Error::NotAnEmbedding(format!(
            "{} arcs uncovered, {} covered more than once",
            cov.arcs_missing, cov.arcs_repeated
        )));
    }
    if !cov.two_coloured() {
        return Err(Error::NotAnEmbedding(
            "some edge misses a colour class".into(),
        ));
    }
    Ok(faces)
}

/// Tries columns reversed first, then rows reversed.
pub fn build_face_set(h: &HeffterArray, pair: &CompatibleOrderingPair) -> Result<FaceSet> {
    match build_face_set_with(h, pair, Convention::ColumnsReversed) {
        Err(Error::NotAnEmbedding(first)) => build_face_set_with(h, pair, Convention::RowsReversed)
            .map_err(|e| match e {
                Error::NotAnEmbedding(second) => {
                    Error::NotAnEmbedding(format!("{first}; with rows reversed: {second}"))
                }
                other => other,
            }),
        other => other,
    }
}

/// Successor of each neighbour around each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    v: u64,
    succ: Vec<u32>,
}

impl RotationSystem {
    pub fn vertex_count(&self) -> u64 {
        self.v
    }

    /// `rho_u(a)`.
    pub fn successor(&self, u: u64, a: u64) -> u64 {
        self.succ[(u * self.v + a) as usize] as u64
    }

    /// The neighbours of `u` in rotation order, starting from `u + 1`.
    pub fn rotation(&self, u: u64) -> Vec<u64> {
        let start = (u + 1) % self.v;
        let mut out = vec![start];
        let mut a = self.successor(u, start);
        while a != start && out.len() < self.v as usize {
            out.push(a);
            a = self.successor(u, a);
        }
        out
    }

    pub fn orbit_count(&self, u: u64) -> usize {
        let mut seen = vec![false; self.v as usize];
        seen[u as usize] = true;
        let mut orbits = 0;
        for a in 0..self.v {
            if seen[a as usize] {
                continue;
            }
            orbits += 1;
            let mut b = a;
            while !seen[b as usize] {
                seen[b as usize] = true;
                b = self.successor(u, b);
            }
        }
        orbits
    }

    /// `rho_{u+1}(a+1) = rho_u(a) + 1` for all `u` and `a`.
    pub fn is_translation_invariant(&self) -> bool {
        let v = self.v;
        (0..v).into_par_iter().all(|u| {
            (0..v)
                .filter(|&a| a != u)
                .all(|a| self.successor((u + 1) % v, (a + 1) % v) == (self.successor(u, a) + 1) % v)
        })
    }

    /// Whether `rho_0` squared, restricted to the entries of the array, is a
    /// single cycle on them.
    pub fn square_at_zero_is_single_cycle(&self, entries: &[i64]) -> bool {
        let v = self.v as i64;
        let index: std::collections::HashMap<u64, usize> = entries
            .iter()
            .enumerate()
            .map(|(i, &x)| (x.rem_euclid(v) as u64, i))
            .collect();
        let mut perm = Vec::with_capacity(entries.len());
        for &x in entries {
            let a = x.rem_euclid(v) as u64;
            let b = self.successor(0, self.successor(0, a));
            match index.get(&b) {
                Some(&k) => perm.push(k),
                None => return false,
            }
        }
        crate::orderings::is_single_cycle(&perm)
    }
}

/// Reads rotations off the explicit face list and checks each is one cycle.
pub fn derive_rotations(faces: &FaceSet) -> Result<RotationSystem> {
    let v = faces.v.get();
    let unset = u32::MAX;
    let mut succ = vec![unset; (v * v) as usize];
    for (_, walk) in faces.faces() {
        let k = walk.len();
        for i in 0..k {
            let (a, u, b) = (walk[(i + k - 1) % k], walk[i], walk[(i + 1) % k]);
            let slot = &mut succ[(u * v + a) as usize];
            if *slot != unset {
                return Err(Error::Inconsistent {
                    vertex: u,
                    detail: format!("neighbour {a} has two successors"),
                });
            }
            *slot = b as u32;
        }
    }
    let rs = RotationSystem { v, succ };
    (0..v).into_par_iter().try_for_each(|u| {
        let mut hit = vec![false; v as usize];
        for a in (0..v).filter(|&a| a != u) {
            let b = rs.succ[(u * v + a) as usize];
            if b == unset {
                return Err(Error::Inconsistent {
                    vertex: u,
                    detail: format!("neighbour {a} has no successor"),
                });
            }
            if b as u64 == u || std::mem::replace(&mut hit[b as usize], true) {
                return Err(Error::Inconsistent {
                    vertex: u,
                    detail: format!("neighbour {b} reached twice"),
                });
            }
        }
        match rs.orbit_count(u) {
            1 => Ok(()),
            orbits => Err(Error::PinchPoint { vertex: u, orbits }),
        }
    })?;
    Ok(rs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub rows: usize,
    pub cols: usize,
    pub vertices: u64,
    pub edges: u64,
    pub row_faces: u64,
    pub column_faces: u64,
    pub euler_characteristic: i64,
    pub genus: u64,
    pub convention: Convention,
    pub arcs_exact: bool,
    pub edges_two_coloured: bool,
    pub rotations_single_cycle: bool,
    pub translation_invariant: bool,
    /// Rotation at 0 squared acts on the array entries as one cycle.
    pub zero_rotation_square_single_cycle: bool,
    pub closed_form_genus: Option<u64>,
}

impl EmbeddingCertificate {
    pub fn faces(&self) -> u64 {
        self.row_faces + self.column_faces
    }

    pub fn closed_form_ok(&self) -> bool {
        self.closed_form_genus == Some(self.genus)
    }

    pub fn all_ok(&self) -> bool {
        self.arcs_exact
            && self.edges_two_coloured
            && self.rotations_single_cycle
            && self.translation_invariant
            && self.closed_form_ok()
    }
}

/// Re-checks coverage and rotations, then applies Euler's formula.
pub fn certify(faces: &FaceSet) -> Result<EmbeddingCertificate> {
    let cov = faces.coverage();
    if !cov.arcs_exact() {
        return Err(Error::NotAnEmbedding("arc coverage is not exact".into()));
    }
    let rotations = derive_rotations(faces)?;
    let v = faces.v.get();
    let edges = v * (v - 1) / 2;
    let row_faces = faces.face_count(Colour::Row);
    let column_faces = faces.face_count(Colour::Column);
    let euler = v as i64 - edges as i64 + (row_faces + column_faces) as i64;
    if euler > 2 || (2 - euler) % 2 != 0 {
        return Err(Error::NotOrientableSurface { euler });
    }
    Ok(EmbeddingCertificate {
        rows: faces.rows,
        cols: faces.cols,
        vertices: v,
        edges,
        row_faces,
        column_faces,
        euler_characteristic: euler,
        genus: ((2 - euler) / 2) as u64,
        convention: faces.convention,
        arcs_exact: true,
        edges_two_coloured: cov.two_coloured(),
        rotations_single_cycle: true,
        translation_invariant: rotations.is_translation_invariant(),
        zero_rotation_square_single_cycle: rotations.square_at_zero_is_single_cycle(&faces.entries),
        closed_form_genus: genus_closed_form(faces.rows as u64, faces.cols as u64),
    })
}

/// `g = 1 - [V + E(1/m + 1/n - 1)] / 2` with `V = 2mn + 1`, `E = C(V, 2)`.
pub fn genus_closed_form(m: u64, n: u64) -> Option<u64> {
    let mn = m.checked_mul(n)?;
    let v = mn.checked_mul(2)?.checked_add(1)? as i128;
    // E / mn = 2mn + 1 exactly
    let twice = 2 - v + v * (mn as i128 - m as i128 - n as i128);
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::h3::simple_h3;
    use crate::orderings::{compatible_orderings, Lines};

    fn faces_for(n: usize) -> (HeffterArray, FaceSet) {
        let h = simple_h3(n).unwrap();
        let pair = compatible_orderings(&h).unwrap();
        let f = build_face_set(&h, &pair).unwrap();
        (h, f)
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus_closed_form(3, 5), Some(94));
        assert_eq!(genus_closed_form(3, 3), Some(20));
        assert_eq!(genus_closed_form(3, 4), Some(51));
    }

    #[test]
    fn h33_faces_and_rotations() {
        let (_, f) = faces_for(3);
        assert_eq!(f.convention(), Convention::ColumnsReversed);
        assert_eq!(f.face_count(Colour::Row), 57);
        assert_eq!(f.face_count(Colour::Column), 57);
        let rs = derive_rotations(&f).unwrap();
        for u in 0..19 {
            assert_eq!(rs.rotation(u).len(), 18);
        }
        let c = certify(&f).unwrap();
        assert_eq!(
            (c.vertices, c.edges, c.faces(), c.genus),
            (19, 171, 114, 20)
        );
        assert!(c.all_ok());
        assert!(c.zero_rotation_square_single_cycle);
    }

    #[test]
    fn h35_genus_94() {
        let (_, f) = faces_for(5);
        assert_eq!(f.face_count(Colour::Column), 155);
        assert_eq!(f.face_count(Colour::Row), 93);
        let c = certify(&f).unwrap();
        assert_eq!(c.faces(), 248);
        assert_eq!(c.genus, 94);
        assert!(c.all_ok());
    }

    #[test]
    fn h34_genus_51() {
        let (_, f) = faces_for(4);
        let c = certify(&f).unwrap();
        assert_eq!(
            (c.vertices, c.edges, c.faces(), c.genus),
            (25, 300, 175, 51)
        );
        assert!(c.all_ok());
    }

    #[test]
    fn rows_reversed_is_the_mirror_image() {
        let h = simple_h3(5).unwrap();
        let pair = compatible_orderings(&h).unwrap();
        let f = build_face_set_with(&h, &pair, Convention::RowsReversed).unwrap();
        assert_eq!(certify(&f).unwrap().genus, 94);
    }

    #[test]
    fn non_simple_row_is_not_an_embedding() {
        let h = simple_h3(8).unwrap();
        let mut pair = compatible_orderings(&h).unwrap();
        // row 1 in the original column order repeats a partial sum
        let raw = crate::h3::construct_raw_h3(8).unwrap();
        let target: Vec<i64> = raw.row(0).to_vec();
        let mut parts = pair.omega_r.parts().to_vec();
        parts[0] = target
            .iter()
            .map(|&x| (0, (0..8).find(|&j| h.get(0, j) == x).unwrap()))
            .collect();
        pair.omega_r = CyclicOrdering::new(3, 8, Lines::Rows, parts).unwrap();
        assert!(matches!(
            build_face_set(&h, &pair),
            Err(Error::NotAnEmbedding(_))
        ));
    }

    #[test]
    fn reversed_row_face_breaks_rotations() {
        let (_, mut f) = faces_for(5);
        let face = f.base.iter_mut().find(|b| b.colour == Colour::Row).unwrap();
        face.walk[1..].reverse();
        assert!(matches!(
            derive_rotations(&f),
            Err(Error::Inconsistent { .. }) | Err(Error::PinchPoint { .. })
        ));
    }

    #[test]
    fn zero_rotation_squared_is_row_after_inverse_column() {
        for n in 3..=12 {
            let (h, f) = faces_for(n);
            let pair = compatible_orderings(&h).unwrap();
            let rs = derive_rotations(&f).unwrap();
            let v = h.modulus();
            let mut col_pred = std::collections::HashMap::new();
            for part in pair.omega_c.parts() {
                for (k, &c) in part.iter().enumerate() {
                    col_pred.insert(part[(k + 1) % part.len()], c);
                }
            }
            for (&c, &p) in &col_pred {
                let a = v.reduce(h.at(c));
                let want = v.reduce(h.at(pair.omega_r.successor(p)));
                assert_eq!(rs.successor(0, rs.successor(0, a)), want, "n = {n}");
            }
        }
    }

    #[test]
    fn rotations_are_translation_invariant() {
        let (h, f) = faces_for(7);
        let rs = derive_rotations(&f).unwrap();
        assert!(rs.is_translation_invariant());
        assert!(rs.square_at_zero_is_single_cycle(h.entries()));
    }
}
