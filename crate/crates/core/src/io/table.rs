//! The `gyrotable-v1` text format.
//!
//! ```text
//! # comments run to end of line
//! format gyrotable-v1
//! order 8
//! name g8                 # optional
//!
//! addition                # n rows of n entries, row a holds a ⊕ 0 .. a ⊕ (n-1)
//! 0 1 2 3 4 5 6 7
//! ...
//!
//! gyration names          # optional: n rows of n permutation names ...
//! I I I I I I I I
//! ...
//! legend                  # ... resolved here; `I` is always the identity
//! A (1 6)(2 5)
//! ```
//!
//! Instead of `gyration names` + `legend`, a `gyration cycles` section may
//! give n rows of n `;`-separated cycle strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{GyroError, Result};
use crate::gyrogroup::{CayleyTable, GyrationTable, Gyrogroup};
use crate::io::cycles::parse_cycles_at;
use crate::perm::Permutation;

pub const FORMAT_TAG: &str = "gyrotable-v1";

/// Parsed contents of a table file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFile {
    pub name: Option<String>,
    pub table: CayleyTable,
    pub gyrations: Option<GyrationTable>,
}

impl TableFile {
    /// Verifies the tables and returns the gyrogroup, named after the file.
    pub fn into_gyrogroup(self) -> Result<Gyrogroup> {
        let g = Gyrogroup::from_tables(&self.table, self.gyrations.as_ref())?;
        Ok(match self.name {
            Some(name) => g.with_name(name),
            None => g,
        })
    }
}

type NamedCell<'a> = (&'a Line<'a>, usize, String);

/// One content line with comments removed, remembering where it came from.
struct Line<'a> {
    number: usize,
    /// Byte offset of `text` within the original line.
    offset: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, offset: usize, msg: impl Into<String>) -> GyroError {
        GyroError::parse(self.number, self.offset + offset + 1, msg)
    }

    /// Whitespace-separated tokens with their byte offsets inside `text`.
    fn tokens(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out
    }
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let offset = body.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            (!trimmed.is_empty()).then_some(Line {
                number: i + 1,
                offset,
                text: trimmed,
            })
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Addition,
    GyrationNames,
    GyrationCycles,
    Legend,
}

fn section_keyword(text: &str) -> Option<Section> {
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        ["addition"] => Some(Section::Addition),
        ["gyration", "names"] => Some(Section::GyrationNames),
        ["gyration", "cycles"] => Some(Section::GyrationCycles),
        ["legend"] => Some(Section::Legend),
        _ => None,
    }
}

/// Parses a table file. The gyration part is `None` when the file only has an
/// addition section; callers then derive it from the gyrator identity.
pub fn parse_table_file(text: &str) -> Result<TableFile> {
    let lines = content_lines(text);
    let mut it = lines.iter().peekable();
    let eof = || GyroError::parse(text.lines().count() + 1, 1, "unexpected end of file");

    let header = it.next().ok_or_else(eof)?;
    match header.tokens().as_slice() {
        [(_, "format"), (_, tag)] if *tag == FORMAT_TAG => {}
        _ => return Err(header.error(0, format!("expected `format {FORMAT_TAG}`"))),
    }
    let order_line = it.next().ok_or_else(eof)?;
    let order = match order_line.tokens().as_slice() {
        [(_, "order"), (off, n)] => n
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| order_line.error(*off, format!("bad order `{n}`")))?,
        _ => return Err(order_line.error(0, "expected `order <n>`")),
    };
    let mut name = None;
    if let Some(line) = it.peek() {
        if let [(_, "name"), (_, label)] = line.tokens().as_slice() {
            name = Some(label.to_string());
            it.next();
        }
    }

    let mut addition: Option<Vec<Vec<usize>>> = None;
    let mut names: Option<Vec<Vec<NamedCell>>> = None;
    let mut cycles: Option<Vec<Vec<Permutation>>> = None;
    let mut legend: BTreeMap<String, Permutation> = BTreeMap::new();
    let mut saw_legend = false;

    while let Some(line) = it.next() {
        let section = section_keyword(line.text)
            .ok_or_else(|| line.error(0, format!("expected a section keyword, found `{}`", line.text)))?;
        let already = match section {
            Section::Addition => addition.is_some(),
            Section::GyrationNames | Section::GyrationCycles => names.is_some() || cycles.is_some(),
            Section::Legend => saw_legend,
        };
        if already {
            return Err(line.error(0, "duplicate section"));
        }
        match section {
            Section::Addition => {
                let mut rows = Vec::with_capacity(order);
                for _ in 0..order {
                    let row = it.next().ok_or_else(eof)?;
                    let toks = row.tokens();
                    if toks.len() != order {
                        return Err(row.error(0, format!("row has {} entries, expected {order}", toks.len())));
                    }
                    let parsed = toks
                        .iter()
                        .map(|&(off, t)| match t.parse::<usize>() {
                            Ok(x) if x < order => Ok(x),
                            Ok(x) => Err(row.error(off, format!("entry {x} is out of range for order {order}"))),
                            Err(_) => Err(row.error(off, format!("bad entry `{t}`"))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(parsed);
                }
                addition = Some(rows);
            }
            Section::GyrationNames => {
                let mut rows = Vec::with_capacity(order);
                for _ in 0..order {
                    let row = it.next().ok_or_else(eof)?;
                    let toks = row.tokens();
                    if toks.len() != order {
                        return Err(row.error(0, format!("row has {} entries, expected {order}", toks.len())));
                    }
                    rows.push(toks.into_iter().map(|(off, t)| (row, off, t.to_string())).collect());
                }
                names = Some(rows);
            }
            Section::GyrationCycles => {
                let mut rows = Vec::with_capacity(order);
                for _ in 0..order {
                    let row = it.next().ok_or_else(eof)?;
                    let cells: Vec<&str> = row.text.split(';').collect();
                    if cells.len() != order {
                        return Err(row.error(0, format!("row has {} cells, expected {order}", cells.len())));
                    }
                    let mut offset = 0;
                    let mut perms = Vec::with_capacity(order);
                    for cell in cells {
                        perms.push(parse_cycles_at(cell, order, row.number, row.offset + offset + 1)?);
                        offset += cell.len() + 1;
                    }
                    rows.push(perms);
                }
                cycles = Some(rows);
            }
            Section::Legend => {
                saw_legend = true;
                while let Some(entry) = it.next_if(|l| section_keyword(l.text).is_none()) {
                    let split = entry.text.find(char::is_whitespace).unwrap_or(entry.text.len());
                    let (key, rest) = entry.text.split_at(split);
                    if key == "I" || legend.contains_key(key) {
                        return Err(entry.error(0, format!("name `{key}` is already defined")));
                    }
                    let perm = parse_cycles_at(rest, order, entry.number, entry.offset + split + 1)?;
                    legend.insert(key.to_string(), perm);
                }
            }
        }
    }

    let table = CayleyTable::from_rows(addition.ok_or_else(eof)?)?;
    let gyrations = match (names, cycles) {
        (Some(rows), _) => {
            let grid = rows
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|(line, off, key)| match key.as_str() {
                            "I" => Ok(Permutation::identity(order)),
                            k => legend
                                .get(k)
                                .cloned()
                                .ok_or_else(|| line.error(off, format!("unknown permutation name `{k}`"))),
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Some(GyrationTable::from_permutations(&grid)?)
        }
        (None, Some(grid)) => Some(GyrationTable::from_permutations(&grid)?),
        (None, None) => None,
    };
    Ok(TableFile { name, table, gyrations })
}

fn permutation_name(k: usize) -> String {
    if k < 26 {
        char::from(b'A' + k as u8).to_string()
    } else {
        format!("P{k}")
    }
}

/// Normalised text: right-aligned addition rows, gyrations (if present) as
/// names `A`, `B`, … assigned in row-major order of first appearance.
pub fn write_table_file(file: &TableFile) -> Result<String> {
    let table = &file.table;
    let n = table.order();
    let width = (n - 1).to_string().len();
    let mut out = String::new();
    let _ = writeln!(out, "format {FORMAT_TAG}");
    let _ = writeln!(out, "order {n}");
    if let Some(name) = &file.name {
        let _ = writeln!(out, "name {name}");
    }
    out.push_str("\naddition\n");
    for a in 0..n {
        let row: Vec<String> = table.row(a).iter().map(|x| format!("{x:>width$}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(gyr) = &file.gyrations {
        let mut legend: Vec<Permutation> = Vec::new();
        let mut grid = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let p = gyr
                    .permutation(a, b)
                    .ok_or_else(|| GyroError::NotAPermutation(format!("gyr[{a},{b}] is not a bijection")))?;
                if p.is_identity() {
                    row.push("I".to_string());
                    continue;
                }
                let k = legend.iter().position(|q| *q == p).unwrap_or_else(|| {
                    legend.push(p);
                    legend.len() - 1
                });
                row.push(permutation_name(k));
            }
            grid.push(row);
        }
        let cell = grid.iter().flatten().map(String::len).max().unwrap_or(1);
        out.push_str("\ngyration names\n");
        for row in grid {
            let row: Vec<String> = row.iter().map(|s| format!("{s:<cell$}")).collect();
            out.push_str(row.join(" ").trim_end());
            out.push('\n');
        }
        out.push_str("\nlegend\n");
        for (k, p) in legend.iter().enumerate() {
            let _ = writeln!(out, "{} {p}", permutation_name(k));
        }
    }
    Ok(out)
}

/// Serialises a validated gyrogroup with its gyration table.
pub fn write_gyrogroup(g: &Gyrogroup) -> String {
    write_table_file(&TableFile {
        name: g.name().map(str::to_string),
        table: g.table().clone(),
        gyrations: Some(g.gyrations().clone()),
    })
    .expect("validated gyrations are bijections")
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z3: &str = "format gyrotable-v1\norder 3\naddition\n0 1 2\n1 2 0\n2 0 1\n";

    #[test]
    fn addition_only() {
        let f = parse_table_file(Z3).unwrap();
        assert!(f.gyrations.is_none());
        assert_eq!(f.name, None);
        assert_eq!(f.table.get(2, 2), 1);
        assert!(f.into_gyrogroup().unwrap().is_group());
    }

    #[test]
    fn short_row_names_its_line() {
        let text = "format gyrotable-v1\norder 3\n\naddition\n0 1 2\n1 2\n2 0 1\n";
        let e = parse_table_file(text).unwrap_err();
        assert!(matches!(e, GyroError::Parse { line: 6, column: 1, .. }), "{e}");
    }

    #[test]
    fn out_of_range_entry_is_located() {
        let text = "format gyrotable-v1\norder 3\naddition\n0 1 2\n1 2 0\n2 0  7 # oops\n";
        let e = parse_table_file(text).unwrap_err();
        assert!(matches!(e, GyroError::Parse { line: 6, column: 6, .. }), "{e}");
    }

    #[test]
    fn unknown_name_and_bad_cycle() {
        let base = "format gyrotable-v1\norder 2\naddition\n0 1\n1 0\ngyration names\nI I\nI X\nlegend\n";
        let e = parse_table_file(base).unwrap_err();
        assert!(matches!(e, GyroError::Parse { line: 8, column: 3, .. }), "{e}");
        let e = parse_table_file(&format!("{base}X (0 0)\n")).unwrap_err();
        assert!(matches!(e, GyroError::Parse { line: 10, .. }), "{e}");
    }

    #[test]
    fn inline_cycles_section() {
        let text = "format gyrotable-v1\norder 2\naddition\n0 1\n1 0\ngyration cycles\nI ; ()\n() ; I\n";
        let f = parse_table_file(text).unwrap();
        assert!(f.gyrations.unwrap().permutation(1, 1).unwrap().is_identity());
        let bad = "format gyrotable-v1\norder 2\naddition\n0 1\n1 0\ngyration cycles\nI ; (0 2)\nI ; I\n";
        assert!(matches!(
            parse_table_file(bad),
            Err(GyroError::Parse { line: 7, column: 8, .. })
        ));
    }

    #[test]
    fn header_errors() {
        assert!(parse_table_file("").is_err());
        assert!(parse_table_file("format other\norder 2\n").is_err());
        assert!(parse_table_file("format gyrotable-v1\norder 0\n").is_err());
        assert!(parse_table_file("format gyrotable-v1\norder 2\n").is_err());
        let dup = format!("{Z3}addition\n0 1 2\n1 2 0\n2 0 1\n");
        assert!(parse_table_file(&dup).is_err());
    }

    #[test]
    fn normalised_output_is_stable() {
        let messy = "# z3\n  format   gyrotable-v1\norder 3\nname z3\naddition\n0 1   2\n 1 2 0\n2 0 1\n";
        let once = write_table_file(&parse_table_file(messy).unwrap()).unwrap();
        let twice = write_table_file(&parse_table_file(&once).unwrap()).unwrap();
        assert_eq!(once, twice);
    }
}
