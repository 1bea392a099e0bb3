//! The array file format.
//!
//! ```text
//! heffter 3 5 31
//! 6 7 -10 -4 1
//! -9 5 2 -11 13
//! 3 -12 8 15 -14
//! # optional comment lines
//! ```
//!
//! The header gives `m`, `n` and `v = 2mn + 1`; each following line holds one
//! row of canonical representatives separated by single spaces. Output is
//! ASCII with LF line endings. The reader accepts any run of spaces or tabs
//! between fields and ignores blank lines and `#` lines after the rows.

use std::fmt::Write as _;

use crate::array::HeffterArray;
use crate::error::{Error, Result};
use crate::modmath::Modulus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayFile {
    pub array: HeffterArray,
    /// Comment text without the leading `# `.
    pub comments: Vec<String>,
}

fn parse_err(line: usize, column: Option<usize>, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

impl ArrayFile {
    pub fn new(array: HeffterArray) -> Self {
        ArrayFile {
            array,
            comments: Vec::new(),
        }
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comments.push(comment.into());
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        if !text.is_ascii() {
            let line = text
                .lines()
                .position(|l| !l.is_ascii())
                .map_or(1, |p| p + 1);
            return Err(parse_err(line, None, "file must be ASCII"));
        }
        let lines: Vec<&str> = text
            .split('\n')
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .collect();
        let mut idx = 0;
        while idx < lines.len() && lines[idx].trim().is_empty() {
            idx += 1;
        }
        let Some(header) = lines.get(idx) else {
            return Err(parse_err(1, None, "missing header \"heffter m n v\""));
        };
        let header_line = idx + 1;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.first() != Some(&"heffter") {
            return Err(parse_err(
                header_line,
                Some(1),
                "header must start with \"heffter\"",
            ));
        }
        if fields.len() != 4 {
            return Err(parse_err(
                header_line,
                None,
                format!(
                    "header needs 4 fields (heffter m n v), found {}",
                    fields.len()
                ),
            ));
        }
        let dim = |k: usize, name: &str| -> Result<usize> {
            match fields[k].parse::<usize>() {
                Ok(x) if x > 0 => Ok(x),
                _ => Err(parse_err(
                    header_line,
                    Some(k + 1),
                    format!("{name} must be a positive integer"),
                )),
            }
        };
        let m = dim(1, "m")?;
        let n = dim(2, "n")?;
        let v: u64 = fields[3]
            .parse()
            .map_err(|_| parse_err(header_line, Some(4), "v must be a positive integer"))?;
        let modulus =
            Modulus::for_array(m, n).map_err(|e| parse_err(header_line, None, e.to_string()))?;
        if modulus.get() != v {
            return Err(parse_err(
                header_line,
                Some(4),
                format!("v must be 2mn+1 = {}, found {v}", modulus.get()),
            ));
        }
        let half = modulus.half();
        let mut first_seen: Vec<Option<(usize, usize)>> = vec![None; half as usize + 1];
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            idx += 1;
            let line_no = idx + 1;
            let Some(line) = lines.get(idx) else {
                return Err(parse_err(
                    line_no,
                    None,
                    format!("expected row {} of {m}", i + 1),
                ));
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != n {
                return Err(parse_err(
                    line_no,
                    None,
                    format!("row {} has {} fields, expected {n}", i + 1, fields.len()),
                ));
            }
            let mut row = Vec::with_capacity(n);
            for (j, f) in fields.iter().enumerate() {
                let x: i64 = f.parse().map_err(|_| {
                    parse_err(line_no, Some(j + 1), format!("\"{f}\" is not an integer"))
                })?;
                if x == 0 {
                    return Err(parse_err(line_no, Some(j + 1), "zero entry"));
                }
                if x.unsigned_abs() > half {
                    return Err(parse_err(
                        line_no,
                        Some(j + 1),
                        format!("|{x}| exceeds (v-1)/2 = {half}"),
                    ));
                }
                let slot = &mut first_seen[x.unsigned_abs() as usize];
                if let Some((pl, pf)) = *slot {
                    return Err(parse_err(
                        line_no,
                        Some(j + 1),
                        format!(
                            "absolute value {} already used at line {pl}, field {pf}",
                            x.unsigned_abs()
                        ),
                    ));
                }
                *slot = Some((line_no, j + 1));
                row.push(x);
            }
            rows.push(row);
        }
        let mut comments = Vec::new();
        for (k, line) in lines.iter().enumerate().skip(idx + 1) {
            if !is_skippable(line) {
                return Err(parse_err(
                    k + 1,
                    None,
                    "unexpected content after the last row",
                ));
            }
            if let Some(c) = line.trim().strip_prefix('#') {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            }
        }
        let array = HeffterArray::from_rows(&rows)?;
        Ok(ArrayFile { array, comments })
    }

    pub fn serialize(&self) -> String {
        let h = &self.array;
        let mut out = format!("heffter {} {} {}\n", h.rows(), h.cols(), h.modulus());
        for i in 0..h.rows() {
            let row: Vec<String> = h.row(i).iter().map(i64::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        out
    }
}

pub fn parse_array(text: &str) -> Result<HeffterArray> {
    ArrayFile::parse(text).map(|f| f.array)
}

pub fn serialize_array(h: &HeffterArray) -> String {
    ArrayFile::new(h.clone()).serialize()
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "heffter 3 5 31\n6 7 -10 -4 1\n-9 5 2 -11 13\n3 -12 8 15 -14\n";

    #[test]
    fn example_round_trips() {
        let h = parse_array(EXAMPLE).unwrap();
        assert!(h.verify().is_heffter());
        assert_eq!(serialize_array(&h), EXAMPLE);
        let loose =
            "  \nheffter  3 5 31\r\n6 7\t-10 -4 1\n-9 5 2 -11 13\n3 -12 8 15 -14\n\n# note\n";
        let f = ArrayFile::parse(loose).unwrap();
        assert_eq!(f.array, h);
        assert_eq!(f.comments, vec!["note".to_string()]);
        assert_eq!(ArrayFile::parse(&f.serialize()).unwrap(), f);
    }

    fn err_at(text: &str) -> (usize, Option<usize>, String) {
        match ArrayFile::parse(text) {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics() {
        let (l, c, msg) = err_at("heffter 3 5 31\n6 7 -10 -4 0\n-9 5 2 -11 13\n3 -12 8 15 -14\n");
        assert_eq!((l, c, msg.as_str()), (2, Some(5), "zero entry"));
        let (l, c, _) = err_at("heffter 3 5 31\n6 7 -10 -4 1\n-9 5 2 -11 16\n3 -12 8 15 -14\n");
        assert_eq!((l, c), (3, Some(5)));
        let (l, c, msg) = err_at("heffter 3 5 31\n6 7 -10 -4 1\n-9 5 2 -11 13\n3 -12 8 15 -6\n");
        assert_eq!((l, c), (4, Some(5)));
        assert!(msg.contains("line 2, field 1"));
        assert_eq!(err_at("heffter 3 5 30\n").1, Some(4));
        assert_eq!(err_at("heffer 3 5 31\n").0, 1);
        assert_eq!(err_at("heffter 3 5 31\n6 7 -10 -4\n").0, 2);
        assert_eq!(err_at("heffter 3 5 31\n6 7 -10 -4 1\n").0, 3);
        assert_eq!(err_at("heffter 3 5 31\n6 7 x -4 1\n").1, Some(3));
        assert_eq!(err_at(&format!("{EXAMPLE}1 2 3\n")).0, 5);
        assert_eq!(err_at("").0, 1);
    }
}
