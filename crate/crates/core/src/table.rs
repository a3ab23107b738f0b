//! The Cayley table value type and the Latin-property validator.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// An element of a table of order `n`, stored as a 0-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
#[repr(transparent)]
pub struct Symbol(u32);

impl Symbol {
    #[inline]
    pub const fn new(index: usize) -> Self {
        Symbol(index as u32)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Symbol {
    fn from(index: usize) -> Self {
        Symbol::new(index)
    }
}

impl fmt::Display for Symbol {
    /// 1-based, matching how tables are written by hand.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("a table must have order at least 1")]
    ZeroOrder,
    #[error("expected {expected} entries for order {n}, got {found}")]
    EntryCount {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row} has {found} entries, expected {n}")]
    RaggedRow { row: usize, n: usize, found: usize },
    #[error("entry at ({row}, {col}) is {value}, outside 0..{n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("operand {value} is outside 0..{n}")]
    OperandOutOfRange { value: usize, n: usize },
    #[error("expected {n} symbol names, got {found}")]
    NameCount { n: usize, found: usize },
    #[error("symbol name {0:?} is used more than once")]
    DuplicateName(String),
    #[error("symbol name {0:?} is empty or contains whitespace")]
    InvalidName(String),
    #[error("relabeling is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
}

/// An `n × n` operation table over the symbols `0..n`.
///
/// Entry `(a, b)` holds the product `a·b`: the row is the left operand and
/// the column is the right operand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: usize,
    entries: Vec<Symbol>,
    names: Option<Vec<String>>,
}

impl CayleyTable {
    /// Builds a table from row-major entries.
    pub fn from_entries(n: usize, entries: Vec<usize>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::ZeroOrder);
        }
        let expected = n.checked_mul(n).ok_or(TableError::EntryCount {
            n,
            expected: usize::MAX,
            found: entries.len(),
        })?;
        if entries.len() != expected {
            return Err(TableError::EntryCount {
                n,
                expected,
                found: entries.len(),
            });
        }
        if n > u32::MAX as usize {
            return Err(TableError::OperandOutOfRange { value: n, n });
        }
        let mut symbols = Vec::with_capacity(expected);
        for (pos, value) in entries.into_iter().enumerate() {
            if value >= n {
                return Err(TableError::EntryOutOfRange {
                    row: pos / n,
                    col: pos % n,
                    value,
                    n,
                });
            }
            symbols.push(Symbol::new(value));
        }
        Ok(CayleyTable {
            n,
            entries: symbols,
            names: None,
        })
    }

    /// Builds a table from a list of rows; the order is the number of rows.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        let n = rows.len();
        if n == 0 {
            return Err(TableError::ZeroOrder);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, values) in rows.iter().enumerate() {
            let values = values.as_ref();
            if values.len() != n {
                return Err(TableError::RaggedRow {
                    row,
                    n,
                    found: values.len(),
                });
            }
            entries.extend_from_slice(values);
        }
        Self::from_entries(n, entries)
    }

    /// Attaches display names, one per symbol in index order.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, TableError> {
        if names.len() != self.n {
            return Err(TableError::NameCount {
                n: self.n,
                found: names.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(TableError::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(TableError::DuplicateName(name.clone()));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Drops any display names.
    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entries(&self) -> &[Symbol] {
        &self.entries
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Row `a` of the table, i.e. the products `a·x` for every `x`.
    pub fn row(&self, a: usize) -> &[Symbol] {
        &self.entries[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Symbol]> + '_ {
        self.entries.chunks_exact(self.n)
    }

    /// Checked product `a·b`.
    pub fn product(&self, a: Symbol, b: Symbol) -> Result<Symbol, TableError> {
        for s in [a, b] {
            if s.index() >= self.n {
                return Err(TableError::OperandOutOfRange {
                    value: s.index(),
                    n: self.n,
                });
            }
        }
        Ok(self.entries[a.index() * self.n + b.index()])
    }

    /// Unchecked-by-contract product on raw indices. Panics when out of range.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.n && b < self.n);
        self.entries[a * self.n + b].index()
    }

    /// Display label of a symbol: its name if the table is named, else the
    /// 1-based numeral.
    pub fn label(&self, s: Symbol) -> String {
        match &self.names {
            Some(names) => names[s.index()].clone(),
            None => s.to_string(),
        }
    }

    /// Returns a copy with cell `(a, b)` set to `value`.
    pub fn with_entry(&self, a: usize, b: usize, value: usize) -> Result<Self, TableError> {
        let n = self.n;
        if a >= n || b >= n {
            return Err(TableError::OperandOutOfRange { value: a.max(b), n });
        }
        if value >= n {
            return Err(TableError::EntryOutOfRange {
                row: a,
                col: b,
                value,
                n,
            });
        }
        let mut out = self.clone();
        out.entries[a * n + b] = Symbol::new(value);
        Ok(out)
    }

    /// Conjugates the table by the symbol permutation `perm` (`x ↦ perm[x]`):
    /// the result satisfies `σa·σb = σ(a·b)`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, TableError> {
        let n = self.n;
        if perm.len() != n {
            return Err(TableError::NotAPermutation { n });
        }
        let mut seen = alloc::vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(TableError::NotAPermutation { n });
            }
            seen[p] = true;
        }
        let mut entries = alloc::vec![Symbol::new(0); n * n];
        for a in 0..n {
            for b in 0..n {
                entries[perm[a] * n + perm[b]] = Symbol::new(perm[self.op(a, b)]);
            }
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = alloc::vec![String::new(); n];
            for (a, name) in names.iter().enumerate() {
                out[perm[a]] = name.clone();
            }
            out
        });
        Ok(CayleyTable { n, entries, names })
    }

    /// Overwrites the entries in place. Used by the enumerator to reuse one
    /// buffer per visited square.
    pub(crate) fn entries_mut(&mut self) -> &mut [Symbol] {
        &mut self.entries
    }

    /// Checks that every row and every column is a permutation of `0..n`.
    pub fn latin_check(&self) -> LatinReport {
        latin_check(self)
    }

    /// Fast yes/no form of [`latin_check`].
    pub fn is_latin(&self) -> bool {
        let n = self.n;
        let mut seen = alloc::vec![0usize; n];
        let mut stamp = 0usize;
        for line in 0..n {
            stamp += 1;
            for pos in 0..n {
                let s = self.op(line, pos);
                if seen[s] == stamp {
                    return false;
                }
                seen[s] = stamp;
            }
            stamp += 1;
            for pos in 0..n {
                let s = self.op(pos, line);
                if seen[s] == stamp {
                    return false;
                }
                seen[s] = stamp;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Column => "column",
        })
    }
}

/// A symbol occurring twice in one row or column. `line`, `first_position`
/// and `second_position` are 0-based; `first_position < second_position`
/// are the two earliest occurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatinViolation {
    pub axis: Axis,
    pub line_index: usize,
    pub symbol: Symbol,
    pub first_position: usize,
    pub second_position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatinReport {
    pub is_latin: bool,
    /// Every duplicated `(axis, line, symbol)`, rows before columns, each
    /// line in the order the duplicate is first seen.
    pub violations: Vec<LatinViolation>,
}

pub fn latin_check(table: &CayleyTable) -> LatinReport {
    const UNSEEN: usize = usize::MAX;
    let n = table.order();
    let mut first_at = alloc::vec![UNSEEN; n];
    let mut reported = alloc::vec![false; n];
    let mut violations = Vec::new();

    for axis in [Axis::Row, Axis::Column] {
        for line in 0..n {
            first_at.fill(UNSEEN);
            reported.fill(false);
            for pos in 0..n {
                let s = match axis {
                    Axis::Row => table.op(line, pos),
                    Axis::Column => table.op(pos, line),
                };
                if first_at[s] == UNSEEN {
                    first_at[s] = pos;
                } else if !reported[s] {
                    reported[s] = true;
                    violations.push(LatinViolation {
                        axis,
                        line_index: line,
                        symbol: Symbol::new(s),
                        first_position: first_at[s],
                        second_position: pos,
                    });
                }
            }
        }
    }

    LatinReport {
        is_latin: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z(n: usize) -> CayleyTable {
        CayleyTable::from_entries(n, (0..n * n).map(|k| (k / n + k % n) % n).collect()).unwrap()
    }

    #[test]
    fn rejects_order_zero() {
        assert_eq!(
            CayleyTable::from_entries(0, vec![]),
            Err(TableError::ZeroOrder)
        );
        let empty: [[usize; 0]; 0] = [];
        assert_eq!(CayleyTable::from_rows(&empty), Err(TableError::ZeroOrder));
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(matches!(
            CayleyTable::from_entries(2, vec![0, 1, 1]),
            Err(TableError::EntryCount { expected: 4, .. })
        ));
        assert!(matches!(
            CayleyTable::from_rows(&[vec![0, 1], vec![1]]),
            Err(TableError::RaggedRow { row: 1, .. })
        ));
        assert!(matches!(
            CayleyTable::from_entries(2, vec![0, 1, 1, 2]),
            Err(TableError::EntryOutOfRange { row: 1, col: 1, .. })
        ));
    }

    #[test]
    fn names_must_be_distinct_and_token_shaped() {
        let t = z(2);
        assert!(t.clone().with_names(vec!["e".into(), "a".into()]).is_ok());
        assert!(matches!(
            t.clone().with_names(vec!["e".into(), "e".into()]),
            Err(TableError::DuplicateName(_))
        ));
        assert!(matches!(
            t.clone().with_names(vec!["e".into(), "a b".into()]),
            Err(TableError::InvalidName(_))
        ));
        assert!(matches!(
            t.with_names(vec!["e".into()]),
            Err(TableError::NameCount { .. })
        ));
    }

    #[test]
    fn product_is_row_major() {
        let t = CayleyTable::from_rows(&[[0, 0], [1, 0]]).unwrap();
        assert_eq!(
            t.product(Symbol::new(1), Symbol::new(0)),
            Ok(Symbol::new(1))
        );
        assert_eq!(
            t.product(Symbol::new(0), Symbol::new(1)),
            Ok(Symbol::new(0))
        );
        assert!(matches!(
            t.product(Symbol::new(2), Symbol::new(0)),
            Err(TableError::OperandOutOfRange { value: 2, n: 2 })
        ));
    }

    #[test]
    fn order_one_is_latin() {
        let t = CayleyTable::from_entries(1, vec![0]).unwrap();
        let r = t.latin_check();
        assert!(r.is_latin && r.violations.is_empty());
    }

    #[test]
    fn reports_every_duplicate_with_earliest_positions() {
        // row 0 holds symbol 1 three times; columns 1 and 2 then repeat it too
        let t = CayleyTable::from_rows(&[[1, 1, 1], [2, 0, 2], [0, 2, 0]]).unwrap();
        let r = t.latin_check();
        assert!(!r.is_latin);
        assert_eq!(
            r.violations[0],
            LatinViolation {
                axis: Axis::Row,
                line_index: 0,
                symbol: Symbol::new(1),
                first_position: 0,
                second_position: 1,
            }
        );
        let rows = r.violations.iter().filter(|v| v.axis == Axis::Row).count();
        let cols = r
            .violations
            .iter()
            .filter(|v| v.axis == Axis::Column)
            .count();
        assert_eq!((rows, cols), (3, 0));
        assert!(!t.is_latin());
    }

    #[test]
    fn relabel_conjugates() {
        let t = z(4);
        let perm = [2, 0, 3, 1];
        let r = t.relabel(&perm).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(r.op(perm[a], perm[b]), perm[t.op(a, b)]);
            }
        }
        assert!(t.relabel(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(Symbol::new(0).to_string(), "1");
        let t = z(2).with_names(vec!["e".into(), "a".into()]).unwrap();
        assert_eq!(t.label(Symbol::new(1)), "a");
        assert_eq!(z(2).label(Symbol::new(1)), "2");
    }
}
