//! Table constructors: the two worked fixtures, cyclic groups, direct
//! products, exhaustive enumeration and random sampling.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::table::{CayleyTable, Symbol, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("exhaustive enumeration of order {n} needs an override (limit {limit})")]
    OrderGuard { n: usize, limit: usize },
    #[error("prefix cell {position} repeats a symbol in its row or column")]
    InconsistentPrefix { position: usize },
    #[error("prefix has {filled} cells but order {n} only has {cells}")]
    PrefixTooLong {
        n: usize,
        filled: usize,
        cells: usize,
    },
    #[error("prefix is for order {prefix} but enumeration is for order {n}")]
    PrefixOrder { n: usize, prefix: usize },
    #[error("a random walk needs at least one step")]
    ZeroSteps,
}

/// The order-4 square used to introduce Latin squares, rows written with
/// symbols 1..4: `2 3 1 4 / 1 4 2 3 / 3 1 4 2 / 4 2 3 1`.
pub fn fixture_intro_square() -> CayleyTable {
    one_based(&[[2, 3, 1, 4], [1, 4, 2, 3], [3, 1, 4, 2], [4, 2, 3, 1]])
}

/// The order-6 loop that has an identity and inverses but is not
/// associative.
///
/// As originally printed, row 4 reads `4 6 6 1 2 3`, which repeats 6 and is
/// not Latin; `corrected = false` reproduces that verbatim. `corrected =
/// true` sets cell (4, 3) to 5, the single-cell repair that restores the
/// Latin property and keeps `(4·2)·4 = 3 ≠ 2 = 4·(2·4)`.
pub fn fixture_remark_loop(corrected: bool) -> CayleyTable {
    let row4 = if corrected {
        [4, 6, 5, 1, 2, 3]
    } else {
        [4, 6, 6, 1, 2, 3]
    };
    one_based(&[
        [1, 2, 3, 4, 5, 6],
        [2, 3, 1, 5, 6, 4],
        [3, 1, 2, 6, 4, 5],
        row4,
        [5, 4, 6, 2, 3, 1],
        [6, 5, 4, 3, 1, 2],
    ])
}

fn one_based<const N: usize>(rows: &[[usize; N]]) -> CayleyTable {
    let entries = rows.iter().flatten().map(|v| v - 1).collect();
    CayleyTable::from_entries(N, entries).expect("fixture is well formed")
}

/// `ℤ/n`: entry `(i, j) = (i + j) mod n`.
pub fn cyclic_table(n: usize) -> Result<CayleyTable, TableError> {
    if n == 0 {
        return Err(TableError::ZeroOrder);
    }
    CayleyTable::from_entries(n, (0..n * n).map(|k| (k / n + k % n) % n).collect())
}

/// Componentwise product; the pair `(a, b)` is encoded as `a·|t| + b`.
/// Names are not carried over.
pub fn direct_product(s: &CayleyTable, t: &CayleyTable) -> CayleyTable {
    let (p, q) = (s.order(), t.order());
    let n = p * q;
    let mut entries = Vec::with_capacity(n * n);
    for x in 0..n {
        let (a1, b1) = (x / q, x % q);
        for y in 0..n {
            let (a2, b2) = (y / q, y % q);
            entries.push(s.op(a1, a2) * q + t.op(b1, b2));
        }
    }
    CayleyTable::from_entries(n, entries).expect("product of valid tables is valid")
}

/// Largest order enumerated exhaustively without an override.
pub const DEFAULT_MAX_ORDER: usize = 5;
/// Largest order enumerated exhaustively at all (812,851,200 squares).
pub const OVERRIDE_MAX_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OrderGuard {
    /// Orders up to [`DEFAULT_MAX_ORDER`].
    #[default]
    Default,
    /// Orders up to [`OVERRIDE_MAX_ORDER`].
    Override,
}

impl OrderGuard {
    pub fn limit(self) -> usize {
        match self {
            OrderGuard::Default => DEFAULT_MAX_ORDER,
            OrderGuard::Override => OVERRIDE_MAX_ORDER,
        }
    }

    pub fn check(self, n: usize) -> Result<(), GenerateError> {
        if n == 0 {
            return Err(TableError::ZeroOrder.into());
        }
        if n > self.limit() {
            return Err(GenerateError::OrderGuard {
                n,
                limit: self.limit(),
            });
        }
        Ok(())
    }
}

/// The first `cells.len()` cells of a square in row-major order. Disjoint
/// prefixes of equal length split an enumeration into independent parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnumPrefix {
    n: usize,
    cells: Vec<Symbol>,
}

impl EnumPrefix {
    pub fn empty(n: usize) -> Self {
        EnumPrefix {
            n,
            cells: Vec::new(),
        }
    }

    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self, GenerateError> {
        if n == 0 {
            return Err(TableError::ZeroOrder.into());
        }
        if cells.len() > n * n {
            return Err(GenerateError::PrefixTooLong {
                n,
                filled: cells.len(),
                cells: n * n,
            });
        }
        for (position, &v) in cells.iter().enumerate() {
            if v >= n {
                return Err(TableError::EntryOutOfRange {
                    row: position / n,
                    col: position % n,
                    value: v,
                    n,
                }
                .into());
            }
            let (r, c) = (position / n, position % n);
            let clash = cells[..position]
                .iter()
                .enumerate()
                .any(|(q, &w)| w == v && (q / n == r || q % n == c));
            if clash {
                return Err(GenerateError::InconsistentPrefix { position });
            }
        }
        Ok(EnumPrefix {
            n,
            cells: cells.into_iter().map(Symbol::new).collect(),
        })
    }

    /// The prefix fixing the first row to `0, 1, …, n−1`.
    pub fn natural_first_row(n: usize) -> Self {
        EnumPrefix {
            n,
            cells: (0..n).map(Symbol::new).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn filled(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    /// Every consistent prefix one cell longer, in ascending symbol order.
    pub fn extensions(&self) -> Vec<EnumPrefix> {
        let n = self.n;
        let position = self.cells.len();
        if position >= n * n {
            return Vec::new();
        }
        let (r, c) = (position / n, position % n);
        let mut used = vec![false; n];
        for (q, s) in self.cells.iter().enumerate() {
            if q / n == r || q % n == c {
                used[s.index()] = true;
            }
        }
        (0..n)
            .filter(|&v| !used[v])
            .map(|v| {
                let mut cells = self.cells.clone();
                cells.push(Symbol::new(v));
                EnumPrefix { n, cells }
            })
            .collect()
    }

    /// All consistent prefixes of length `depth` (clamped to `n²`), in
    /// enumeration order.
    pub fn partition(n: usize, depth: usize) -> Vec<EnumPrefix> {
        let depth = depth.min(n * n);
        let mut level = vec![EnumPrefix::empty(n)];
        for _ in 0..depth {
            level = level.iter().flat_map(EnumPrefix::extensions).collect();
        }
        level
    }
}

/// Visits every Latin square of order `n` that extends `prefix`, exactly
/// once and in row-major lexicographic order. Returns the number visited.
///
/// The visitor sees a table that is overwritten between calls; clone it to
/// keep it.
pub fn enumerate_latin<F>(
    n: usize,
    prefix: Option<&EnumPrefix>,
    guard: OrderGuard,
    mut visitor: F,
) -> Result<u64, GenerateError>
where
    F: FnMut(&CayleyTable),
{
    guard.check(n)?;
    let fixed: &[Symbol] = match prefix {
        Some(p) if p.n != n => {
            return Err(GenerateError::PrefixOrder { n, prefix: p.n });
        }
        Some(p) => &p.cells,
        None => &[],
    };

    let mut search = Backtrack {
        n,
        row_used: vec![0; n],
        col_used: vec![0; n],
        table: CayleyTable::from_entries(n, vec![0; n * n])?,
        count: 0,
    };
    for (position, &s) in fixed.iter().enumerate() {
        if !search.place(position, s.index()) {
            return Err(GenerateError::InconsistentPrefix { position });
        }
    }
    search.run(fixed.len(), &mut visitor);
    Ok(search.count)
}

struct Backtrack {
    n: usize,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    table: CayleyTable,
    count: u64,
}

impl Backtrack {
    fn place(&mut self, position: usize, v: usize) -> bool {
        let (r, c) = (position / self.n, position % self.n);
        let bit = 1u64 << v;
        if (self.row_used[r] | self.col_used[c]) & bit != 0 {
            return false;
        }
        self.row_used[r] |= bit;
        self.col_used[c] |= bit;
        self.table.entries_mut()[position] = Symbol::new(v);
        true
    }

    fn unplace(&mut self, position: usize, v: usize) {
        let (r, c) = (position / self.n, position % self.n);
        let bit = !(1u64 << v);
        self.row_used[r] &= bit;
        self.col_used[c] &= bit;
    }

    fn run<F: FnMut(&CayleyTable)>(&mut self, position: usize, visitor: &mut F) {
        let n = self.n;
        if position == n * n {
            self.count += 1;
            visitor(&self.table);
            return;
        }
        let (r, c) = (position / n, position % n);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut free = !(self.row_used[r] | self.col_used[c]) & full;
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            self.place(position, v);
            self.run(position + 1, visitor);
            self.unplace(position, v);
        }
    }
}

/// Parameters for one Jacobson–Matthews random walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub n: usize,
    pub seed: u64,
    pub steps: u64,
}

impl SampleConfig {
    /// `n³` steps.
    pub fn new(n: usize, seed: u64) -> Self {
        let steps = (n as u64).pow(3).max(1);
        SampleConfig { n, seed, steps }
    }

    pub fn with_steps(self, steps: u64) -> Self {
        SampleConfig { steps, ..self }
    }
}

/// Random Latin square by the Jacobson–Matthews walk on the incidence cube,
/// started from the cyclic square. After `cfg.steps` moves the walk keeps
/// going until it is back at a proper square.
pub fn random_latin(cfg: SampleConfig) -> Result<CayleyTable, GenerateError> {
    if cfg.steps == 0 {
        return Err(GenerateError::ZeroSteps);
    }
    let start = cyclic_table(cfg.n)?;
    if cfg.n == 1 {
        return Ok(start);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cube = IncidenceCube::from_table(&start);
    let mut taken = 0u64;
    while taken < cfg.steps || cube.improper.is_some() {
        cube.step(&mut rng);
        taken += 1;
    }
    Ok(cube.to_table())
}

/// 0/1 incidence cube of a Latin square, with at most one `-1` cell while a
/// move is in progress.
struct IncidenceCube {
    n: usize,
    cells: Vec<i8>,
    improper: Option<(usize, usize, usize)>,
}

impl IncidenceCube {
    fn from_table(table: &CayleyTable) -> Self {
        let n = table.order();
        let mut cells = vec![0i8; n * n * n];
        for r in 0..n {
            for c in 0..n {
                cells[(r * n + c) * n + table.op(r, c)] = 1;
            }
        }
        IncidenceCube {
            n,
            cells,
            improper: None,
        }
    }

    #[inline]
    fn at(&self, r: usize, c: usize, s: usize) -> i8 {
        self.cells[(r * self.n + c) * self.n + s]
    }

    #[inline]
    fn add(&mut self, r: usize, c: usize, s: usize, delta: i8) {
        self.cells[(r * self.n + c) * self.n + s] += delta;
    }

    fn pick<R: Rng>(rng: &mut R, candidates: &[usize]) -> usize {
        candidates[rng.gen_range(0..candidates.len() as u32) as usize]
    }

    fn step<R: Rng>(&mut self, rng: &mut R) {
        let n = self.n;
        let (r, c, s, r2, c2, s2);
        match self.improper {
            None => {
                r = rng.gen_range(0..n as u32) as usize;
                c = rng.gen_range(0..n as u32) as usize;
                let current = (0..n).find(|&v| self.at(r, c, v) == 1).unwrap();
                // uniform over the n−1 symbols other than the current one
                let mut v = rng.gen_range(0..(n - 1) as u32) as usize;
                if v >= current {
                    v += 1;
                }
                s = v;
                r2 = (0..n).find(|&x| self.at(x, c, s) == 1).unwrap();
                c2 = (0..n).find(|&y| self.at(r, y, s) == 1).unwrap();
                s2 = current;
            }
            Some((ir, ic, is)) => {
                r = ir;
                c = ic;
                s = is;
                let rows: Vec<usize> = (0..n).filter(|&x| self.at(x, c, s) == 1).collect();
                let cols: Vec<usize> = (0..n).filter(|&y| self.at(r, y, s) == 1).collect();
                let syms: Vec<usize> = (0..n).filter(|&z| self.at(r, c, z) == 1).collect();
                r2 = Self::pick(rng, &rows);
                c2 = Self::pick(rng, &cols);
                s2 = Self::pick(rng, &syms);
            }
        }

        self.add(r, c, s, 1);
        self.add(r, c2, s2, 1);
        self.add(r2, c, s2, 1);
        self.add(r2, c2, s, 1);
        self.add(r, c, s2, -1);
        self.add(r, c2, s, -1);
        self.add(r2, c, s, -1);
        self.add(r2, c2, s2, -1);

        self.improper = (self.at(r2, c2, s2) < 0).then_some((r2, c2, s2));
    }

    fn to_table(&self) -> CayleyTable {
        debug_assert!(self.improper.is_none());
        let n = self.n;
        let entries = (0..n * n)
            .map(|rc| (0..n).find(|&v| self.cells[rc * n + v] == 1).unwrap())
            .collect();
        CayleyTable::from_entries(n, entries).expect("proper cube is a Latin square")
    }
}
