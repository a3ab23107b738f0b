//! Text and JSON table files.
//!
//! Text: an optional `n=<int>` line, an optional `symbols=<name> …` line,
//! then `n` rows of `n` whitespace-separated tokens. Blank lines and lines
//! starting with `#` are skipped. Tokens are either the numerals `1..=n` or
//! `n` distinct symbol names; without a `symbols=` line, names are numbered
//! in order of first appearance.
//!
//! JSON: `{"n": int, "symbols": [string; n]?, "table": [[int; n]; n]}` with
//! 0-based entries.

use std::fmt;
use std::path::Path;

use cayley_core::table::{CayleyTable, TableError};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl Format {
    /// `.json` files are JSON, everything else is text.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Text,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("no table rows found")]
    Empty,
    #[error("malformed header {0:?}")]
    BadHeader(String),
    #[error("row has {found} entries, expected {expected}")]
    RaggedRow { expected: usize, found: usize },
    #[error("found {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("numeral {value} is outside 1..={n}")]
    NumeralOutOfRange { value: u64, n: usize },
    #[error("found {found} distinct symbols, expected {expected}")]
    SymbolCount { expected: usize, found: usize },
    #[error("symbol {0:?} is not declared")]
    UnknownSymbol(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{0}")]
    Json(String),
}

/// A parse failure at a 1-based line and column (column 0 when the whole
/// line or file is at fault).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (0, _) => write!(f, "{}", self.kind),
            (line, 0) => write!(f, "line {line}: {}", self.kind),
            (line, column) => write!(f, "line {line}, column {column}: {}", self.kind),
        }
    }
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

pub fn parse(input: &str, format: Format) -> Result<CayleyTable, ParseError> {
    match format {
        Format::Text => parse_text(input),
        Format::Json => parse_json(input),
    }
}

pub fn serialize(table: &CayleyTable, format: Format) -> String {
    match format {
        Format::Text => to_text(table),
        Format::Json => to_json(table),
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    line: line_no,
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn header_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?.trim_start();
    rest.strip_prefix('=')
}

pub fn parse_text(input: &str) -> Result<CayleyTable, ParseError> {
    let mut declared_n: Option<usize> = None;
    let mut declared_names: Option<Vec<String>> = None;
    let mut rows: Vec<(usize, Vec<Token<'_>>)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if rows.is_empty() && declared_names.is_none() {
            if declared_n.is_none() {
                if let Some(value) = header_value(line, "n") {
                    let n: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| err(line_no, 0, ParseErrorKind::BadHeader(line.into())))?;
                    if n == 0 {
                        return Err(err(line_no, 0, TableError::ZeroOrder.into()));
                    }
                    declared_n = Some(n);
                    continue;
                }
            }
            if let Some(value) = header_value(line, "symbols") {
                declared_names = Some(value.split_whitespace().map(String::from).collect());
                continue;
            }
        }
        rows.push((line_no, tokens(line_no, raw)));
    }

    if rows.is_empty() {
        return Err(err(0, 0, ParseErrorKind::Empty));
    }
    let n = declared_n.unwrap_or(rows.len());
    for (line_no, row) in &rows {
        if row.len() != n {
            return Err(err(
                *line_no,
                0,
                ParseErrorKind::RaggedRow {
                    expected: n,
                    found: row.len(),
                },
            ));
        }
    }
    if rows.len() != n {
        let line = rows.last().map_or(0, |r| r.0);
        return Err(err(
            line,
            0,
            ParseErrorKind::RowCount {
                expected: n,
                found: rows.len(),
            },
        ));
    }

    let all: Vec<&Token<'_>> = rows.iter().flat_map(|(_, r)| r.iter()).collect();
    let numeric = declared_names.is_none() && all.iter().all(|t| t.text.parse::<u64>().is_ok());

    if numeric {
        let mut entries = Vec::with_capacity(n * n);
        for t in &all {
            let value: u64 = t.text.parse().expect("checked numeric");
            if value == 0 || value > n as u64 {
                return Err(err(
                    t.line,
                    t.column,
                    ParseErrorKind::NumeralOutOfRange { value, n },
                ));
            }
            entries.push(value as usize - 1);
        }
        return CayleyTable::from_entries(n, entries).map_err(|e| err(0, 0, e.into()));
    }

    let names = match declared_names {
        Some(names) => {
            if names.len() != n {
                return Err(err(
                    0,
                    0,
                    ParseErrorKind::SymbolCount {
                        expected: n,
                        found: names.len(),
                    },
                ));
            }
            names
        }
        None => {
            let mut names: Vec<String> = Vec::new();
            for t in &all {
                if !names.iter().any(|s| s == t.text) {
                    names.push(t.text.to_string());
                }
            }
            if names.len() != n {
                return Err(err(
                    0,
                    0,
                    ParseErrorKind::SymbolCount {
                        expected: n,
                        found: names.len(),
                    },
                ));
            }
            names
        }
    };
    let mut entries = Vec::with_capacity(n * n);
    for t in &all {
        let index = names.iter().position(|s| s == t.text).ok_or_else(|| {
            err(
                t.line,
                t.column,
                ParseErrorKind::UnknownSymbol(t.text.into()),
            )
        })?;
        entries.push(index);
    }
    CayleyTable::from_entries(n, entries)
        .and_then(|t| t.with_names(names))
        .map_err(|e| err(0, 0, e.into()))
}

pub fn to_text(table: &CayleyTable) -> String {
    let mut out = String::new();
    if let Some(names) = table.names() {
        out.push_str("symbols=");
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    for row in table.rows() {
        let line: Vec<String> = row.iter().map(|&s| table.label(s)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTable {
    n: usize,
    #[serde(default)]
    symbols: Option<Vec<String>>,
    table: Vec<Vec<usize>>,
}

pub fn parse_json(input: &str) -> Result<CayleyTable, ParseError> {
    let raw: JsonTable = serde_json::from_str(input)
        .map_err(|e| err(e.line(), e.column(), ParseErrorKind::Json(e.to_string())))?;
    if raw.n == 0 {
        return Err(err(0, 0, TableError::ZeroOrder.into()));
    }
    if raw.table.len() != raw.n {
        return Err(err(
            0,
            0,
            ParseErrorKind::RowCount {
                expected: raw.n,
                found: raw.table.len(),
            },
        ));
    }
    let table = CayleyTable::from_rows(&raw.table).map_err(|e| err(0, 0, e.into()))?;
    match raw.symbols {
        Some(names) => table.with_names(names).map_err(|e| err(0, 0, e.into())),
        None => Ok(table),
    }
}

pub fn to_json(table: &CayleyTable) -> String {
    let mut out = format!("{{\n  \"n\": {},\n", table.order());
    if let Some(names) = table.names() {
        let names = serde_json::to_string(names).expect("strings serialize");
        out.push_str(&format!("  \"symbols\": {names},\n"));
    }
    out.push_str("  \"table\": [\n");
    let rows: Vec<String> = table
        .rows()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|s| s.index().to_string()).collect();
            format!("    [{}]", cells.join(", "))
        })
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}
