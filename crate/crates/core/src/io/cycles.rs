//! Cycle notation: `(1 7 5 10 6)(2 3 8 11 14)`, with `I` or `()` for the identity.

use crate::error::{GyroError, Result};
use crate::perm::Permutation;

/// Parses a product of disjoint cycles on `{0, .., n-1}`. Points may be
/// separated by whitespace or commas; unmentioned points are fixed.
pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
    parse_cycles_at(text, n, 1, 1)
}

/// As [`parse_cycles`], reporting errors relative to `(line, column)`.
pub(crate) fn parse_cycles_at(text: &str, n: usize, line: usize, column: usize) -> Result<Permutation> {
    let err = |offset: usize, msg: String| GyroError::parse(line, column + offset, msg);
    let trimmed = text.trim();
    if trimmed == "I" {
        return Ok(Permutation::identity(n));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    let mut current: Option<Vec<usize>> = None;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'(' => {
                if current.is_some() {
                    return Err(err(i, "nested `(`".into()));
                }
                current = Some(Vec::new());
                i += 1;
            }
            b')' => {
                let cycle = current.take().ok_or_else(|| err(i, "unmatched `)`".into()))?;
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
                i += 1;
            }
            b' ' | b'\t' | b',' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let cycle = current
                    .as_mut()
                    .ok_or_else(|| err(start, "point outside of a cycle".into()))?;
                let x: usize = text[start..i]
                    .parse()
                    .map_err(|_| err(start, format!("bad point `{}`", &text[start..i])))?;
                if x >= n {
                    return Err(err(start, format!("point {x} is out of range for degree {n}")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(err(start, format!("point {x} is repeated")));
                }
                cycle.push(x);
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(i, format!("unexpected character `{ch}`")));
            }
        }
    }
    if current.is_some() {
        return Err(err(bytes.len(), "unterminated cycle".into()));
    }
    if trimmed.is_empty() {
        return Err(err(0, "empty permutation; write `I` or `()`".into()));
    }
    Permutation::from_cycles(n, &cycles)
}
