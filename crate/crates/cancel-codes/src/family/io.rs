//! Text formats for families.
//!
//! ".fam": optional '#' comment lines; first data line "n m"; then m lines
//! of strictly increasing 0-based vertex indices separated by single
//! spaces (an empty line is the empty set).
//!
//! ".bits": m lines of exactly n characters '0'/'1', one member per line.
//! The bit format cannot express an empty family (n would be unknowable).

use super::{FamilyError, Mask, SetFamily};
use std::fmt;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn family_error(line: usize, e: FamilyError) -> ParseError {
    ParseError { line, msg: e.to_string() }
}

pub fn parse_fam(text: &str) -> Result<SetFamily, ParseError> {
    let mut data_lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('#'));
    let (hline, header) = data_lines
        .next()
        .ok_or(ParseError { line: 0, msg: "empty file".into() })?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError { line: hline, msg: "expected header \"n m\"".into() })?;
    let m: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError { line: hline, msg: "expected header \"n m\"".into() })?;
    if parts.next().is_some() {
        return Err(ParseError { line: hline, msg: "trailing tokens after header".into() });
    }
    let mut members: Vec<Mask> = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, line) = data_lines.next().ok_or(ParseError {
            line: hline,
            msg: format!("expected {m} member lines, file ended early"),
        })?;
        let mut mask: Mask = 0;
        let mut prev: Option<usize> = None;
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| ParseError {
                line: lno,
                msg: format!("bad vertex index {tok:?}"),
            })?;
            if v >= n {
                return Err(ParseError {
                    line: lno,
                    msg: format!("vertex {v} outside universe of size {n}"),
                });
            }
            if prev.is_some_and(|p| p >= v) {
                return Err(ParseError {
                    line: lno,
                    msg: "vertex indices must be strictly increasing".into(),
                });
            }
            prev = Some(v);
            mask |= (1 as Mask) << v;
        }
        members.push(mask);
    }
    if let Some((lno, extra)) = data_lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(ParseError {
            line: lno,
            msg: format!("unexpected content after {m} members: {extra:?}"),
        });
    }
    SetFamily::new(n, members).map_err(|e| family_error(hline, e))
}

pub fn write_fam(f: &SetFamily) -> String {
    let mut out = format!("{} {}\n", f.n(), f.len());
    for i in 0..f.len() {
        let verts: Vec<String> =
            f.member_vertices(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&verts.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_bits(text: &str) -> Result<SetFamily, ParseError> {
    let mut n = None;
    let mut members = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lno = i + 1;
        let row = line.trim_end();
        if row.is_empty() && n.is_some() {
            return Err(ParseError { line: lno, msg: "blank line inside bit rows".into() });
        }
        let width = row.chars().count();
        match n {
            None => n = Some(width),
            Some(w) if w != width => {
                return Err(ParseError {
                    line: lno,
                    msg: format!("row width {width} differs from first row width {w}"),
                })
            }
            _ => {}
        }
        let mut mask: Mask = 0;
        for (pos, ch) in row.chars().enumerate() {
            match ch {
                '1' => mask |= (1 as Mask) << pos,
                '0' => {}
                other => {
                    return Err(ParseError {
                        line: lno,
                        msg: format!("unexpected character {other:?} in bit row"),
                    })
                }
            }
        }
        members.push(mask);
    }
    let n = n.ok_or(ParseError { line: 0, msg: "empty bit file".into() })?;
    SetFamily::new(n, members).map_err(|e| family_error(1, e))
}

pub fn write_bits(f: &SetFamily) -> String {
    let mut out = String::with_capacity((f.n() + 1) * f.len());
    for &m in f.members() {
        for v in 0..f.n() {
            out.push(if m >> v & 1 == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Load from a path, dispatching on the ".bits" extension (anything else
/// parses as ".fam").
pub fn load_family(path: &Path) -> Result<SetFamily, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError { line: 0, msg: format!("{}: {e}", path.display()) })?;
    if path.extension().is_some_and(|e| e == "bits") {
        parse_bits(&text)
    } else {
        parse_fam(&text)
    }
}
