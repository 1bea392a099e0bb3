//! Certification reports: an ordered tree of dotted keys, one `key = value`
//! line each, plus the builders that fill them from each certifier.
//!
//! Values are written bare when that is unambiguous and as double-quoted
//! strings with `\\`, `\"`, `\n`, `\r` and `\t` escapes otherwise. Lines
//! starting with `#` and blank lines are ignored when reading.

use std::fmt::{self, Display};

use indexmap::IndexMap;

use crate::array::HeffterArray;
use crate::cycles::CycleSystem;
use crate::embedding::{Colour, EmbeddingCertificate, FaceSet};
use crate::error::{Error, Result};
use crate::h3::{simple_h3, table_conformance};
use crate::orderings::{compose, CompatibleOrderingPair};
use crate::search::SearchOutcome;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CertReport {
    entries: IndexMap<String, String>,
}

fn valid_key(key: &str) -> bool {
    !key.is_empty()
        && key.split('.').all(|seg| {
            !seg.is_empty()
                && seg
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        })
}

fn needs_quotes(value: &str) -> bool {
    value.is_empty()
        || value.starts_with('"')
        || value.trim() != value
        || value.chars().any(|c| c == '\\' || c.is_control())
}

fn quote(value: &str) -> String {
    let mut out = String::with_capacity(value.len() + 2);
    out.push('"');
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => out.push_str(&format!("\\u{{{:x}}}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn unquote(raw: &str, line: usize) -> Result<String> {
    let err = |message: &str| Error::Parse {
        line,
        column: None,
        message: message.into(),
    };
    let inner = raw
        .strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .filter(|_| raw.len() >= 2)
        .ok_or_else(|| err("unterminated quoted value"))?;
    let mut out = String::with_capacity(inner.len());
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => match chars.next() {
                Some('"') => out.push('"'),
                Some('\\') => out.push('\\'),
                Some('n') => out.push('\n'),
                Some('r') => out.push('\r'),
                Some('t') => out.push('\t'),
                Some('u') => {
                    let rest: String = chars.by_ref().take_while(|&c| c != '}').collect();
                    let code = rest
                        .strip_prefix('{')
                        .and_then(|h| u32::from_str_radix(h, 16).ok())
                        .and_then(char::from_u32)
                        .ok_or_else(|| err("bad \\u escape"))?;
                    out.push(code);
                }
                _ => return Err(err("bad escape")),
            },
            '"' => return Err(err("unescaped quote inside value")),
            c => out.push(c),
        }
    }
    Ok(out)
}

impl CertReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `key`, keeping the position of an existing entry.
    ///
    /// # Panics
    /// If `key` is not a dotted sequence of `[A-Za-z0-9_-]+` segments.
    pub fn set(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        let key = key.into();
        assert!(valid_key(&key), "invalid report key {key:?}");
        self.entries.insert(key, value.to_string());
        self
    }

    /// Space-separated list.
    pub fn set_list<T: Display>(
        &mut self,
        key: impl Into<String>,
        items: impl IntoIterator<Item = T>,
    ) -> &mut Self {
        let joined = items
            .into_iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        self.set(key, joined)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get_bool(&self, key: &str) -> Option<bool> {
        self.get(key).and_then(|v| v.parse().ok())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Entries under `prefix.`, with the prefix removed.
    pub fn subtree(&self, prefix: &str) -> CertReport {
        let p = format!("{prefix}.");
        CertReport {
            entries: self
                .entries
                .iter()
                .filter_map(|(k, v)| k.strip_prefix(&p).map(|s| (s.to_string(), v.clone())))
                .collect(),
        }
    }

    /// Appends every entry of `other` under `prefix.`.
    pub fn merge(&mut self, prefix: &str, other: &CertReport) -> &mut Self {
        for (k, v) in other.iter() {
            self.set(format!("{prefix}.{k}"), v);
        }
        self
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(" = ");
            if needs_quotes(v) {
                out.push_str(&quote(v));
            } else {
                out.push_str(v);
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut report = CertReport::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, raw) = line.split_once(" = ").ok_or_else(|| Error::Parse {
                line: line_no,
                column: None,
                message: "expected \"key = value\"".into(),
            })?;
            let key = key.trim();
            if !valid_key(key) {
                return Err(Error::Parse {
                    line: line_no,
                    column: None,
                    message: format!("invalid key {key:?}"),
                });
            }
            let value = if raw.starts_with('"') {
                unquote(raw, line_no)?
            } else {
                raw.to_string()
            };
            if report.entries.insert(key.to_string(), value).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    column: None,
                    message: format!("duplicate key {key}"),
                });
            }
        }
        Ok(report)
    }
}

impl fmt::Display for CertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn cell(c: (usize, usize)) -> String {
    format!("({},{})", c.0 + 1, c.1 + 1)
}

fn flags(bits: &[bool]) -> String {
    bits.iter()
        .map(bool::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Shape, axiom flags and partial sums of `h`.
pub fn verification_report(h: &HeffterArray) -> CertReport {
    let vr = h.verify();
    let mut r = CertReport::new();
    r.set("array.rows", h.rows())
        .set("array.cols", h.cols())
        .set("array.modulus", h.modulus());
    r.set("verify.heffter", vr.is_heffter())
        .set("verify.simple", vr.is_simple())
        .set("verify.half_set", vr.half_set_ok)
        .set("verify.row_sums", flags(&vr.row_sum_ok))
        .set("verify.column_sums", flags(&vr.col_sum_ok))
        .set("verify.row_simple", flags(&vr.row_simple))
        .set("verify.column_simple", flags(&vr.col_simple));
    for i in 0..h.rows() {
        r.set_list(format!("partial_sums.row.{}", i + 1), h.row_partial_sums(i));
    }
    for j in 0..h.cols() {
        r.set_list(
            format!("partial_sums.column.{}", j + 1),
            h.column_partial_sums(j),
        );
    }
    r
}

/// Comparison with the interval tables when `h` is the standard simple
/// `3 x n` array and a table covers `n`; `None` otherwise.
pub fn conformance_report(h: &HeffterArray) -> Option<CertReport> {
    let n = h.cols();
    if h.rows() != 3 || n < 8 || simple_h3(n).ok().as_ref() != Some(h) {
        return None;
    }
    let rows = table_conformance(n).ok()?;
    if rows.iter().all(|c| c.matches_table.is_none()) {
        return None;
    }
    let mut r = CertReport::new();
    for c in rows {
        let key = format!("table.row.{}", c.row);
        r.set(format!("{key}.distinct"), c.distinct);
        if let Some(ok) = c.matches_table {
            r.set(format!("{key}.matches"), ok);
        }
        if !c.printed_extra.is_empty() {
            r.set_list(format!("{key}.printed_extra"), &c.printed_extra);
        }
        if !c.printed_missing.is_empty() {
            r.set_list(format!("{key}.printed_missing"), &c.printed_missing);
        }
        for (k, e) in c.errata.iter().enumerate() {
            r.set(format!("{key}.erratum.{}", k + 1), e);
        }
    }
    Some(r)
}

/// The two orderings as cell lists and the composite cycle.
pub fn orderings_report(h: &HeffterArray, pair: &CompatibleOrderingPair) -> CertReport {
    let mut r = CertReport::new();
    for (k, part) in pair.omega_r.parts().iter().enumerate() {
        r.set_list(
            format!("orderings.row.{}", k + 1),
            part.iter().map(|&c| cell(c)),
        );
    }
    for (k, part) in pair.omega_c.parts().iter().enumerate() {
        r.set_list(
            format!("orderings.column.{}", k + 1),
            part.iter().map(|&c| cell(c)),
        );
    }
    let single = compose(&pair.omega_r, &pair.omega_c).is_ok_and(|p| p.is_single_cycle());
    r.set("composite.length", pair.composition_cycle.len())
        .set("composite.cells", h.rows() * h.cols())
        .set("composite.single_cycle", single)
        .set_list(
            "composite.cycle",
            pair.composition_cycle.iter().map(|&c| cell(c)),
        )
        .set_list("composite.entries", pair.element_cycle(h));
    r
}

/// Base cycles, coverage and closure of a developed system.
pub fn cycles_report(cs: &CycleSystem, expand: bool) -> CertReport {
    let mut r = CertReport::new();
    let cov = cs.pair_coverage();
    r.set("cycles.v", cs.v)
        .set("cycles.k", cs.k)
        .set("cycles.count", cs.cycles.len())
        .set("cycles.pairs", cov.pairs)
        .set("cycles.uncovered", cov.uncovered)
        .set("cycles.over_covered", cov.over_covered)
        .set("cycles.exact_cover", cov.is_exact())
        .set("cycles.simple", cs.all_simple())
        .set("cycles.cyclic", cs.is_cyclic());
    // the untranslated copy of each base cycle starts at 0
    for (k, c) in cs.cycles.iter().filter(|c| c[0] == 0).enumerate() {
        r.set_list(format!("cycles.base.{}", k + 1), c);
    }
    if expand {
        for (k, c) in cs.cycles.iter().enumerate() {
            r.set_list(format!("cycles.all.{}", k + 1), c);
        }
    } else {
        r.set("cycles.developed", format!("mod {}", cs.v));
    }
    r
}

/// Base faces, certificate fields and optionally every face.
pub fn embedding_report(faces: &FaceSet, cert: &EmbeddingCertificate, expand: bool) -> CertReport {
    let mut r = CertReport::new();
    r.set("faces.convention", faces.convention().name());
    for f in faces.base_faces() {
        let colour = match f.colour {
            Colour::Row => "row",
            Colour::Column => "column",
        };
        r.set_list(format!("faces.{colour}.base.{}", f.part + 1), &f.walk);
    }
    if expand {
        for (k, (colour, walk)) in faces.faces().enumerate() {
            let tag = match colour {
                Colour::Row => "row:",
                Colour::Column => "column:",
            };
            r.set_list(
                format!("faces.all.{}", k + 1),
                std::iter::once(tag.to_string()).chain(walk.iter().map(u64::to_string)),
            );
        }
    } else {
        r.set("faces.developed", format!("mod {}", faces.modulus()));
    }
    r.set("embedding.vertices", cert.vertices)
        .set("embedding.edges", cert.edges)
        .set("embedding.row_faces", cert.row_faces)
        .set("embedding.column_faces", cert.column_faces)
        .set("embedding.faces", cert.faces())
        .set("embedding.euler_characteristic", cert.euler_characteristic)
        .set("embedding.genus", cert.genus)
        .set("embedding.arcs_exact", cert.arcs_exact)
        .set("embedding.edges_two_coloured", cert.edges_two_coloured)
        .set(
            "embedding.rotations_single_cycle",
            cert.rotations_single_cycle,
        )
        .set(
            "embedding.translation_invariant",
            cert.translation_invariant,
        )
        .set(
            "embedding.zero_rotation_square_single_cycle",
            cert.zero_rotation_square_single_cycle,
        );
    match cert.closed_form_genus {
        Some(g) => r.set("embedding.closed_form_genus", g),
        None => r.set("embedding.closed_form_genus", "none"),
    };
    r.set("embedding.closed_form_ok", cert.closed_form_ok())
        .set("embedding.ok", cert.all_ok());
    r
}

/// The permutation found and the re-verification of the reordered array.
pub fn search_report(outcome: &SearchOutcome) -> CertReport {
    let mut r = CertReport::new();
    r.set("search.result", "found")
        .set("search.permutation", &outcome.permutation)
        .set("search.nodes", outcome.nodes)
        .set("search.heffter", outcome.report.is_heffter())
        .set("search.simple", outcome.report.is_simple());
    r
}
