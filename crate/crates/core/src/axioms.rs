//! Individual axiom checks on a Cayley table.
//!
//! Everything except [`inverse_map`] is meaningful on arbitrary tables, Latin
//! or not.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::table::{CayleyTable, Symbol};

/// A triple `(a, b, c)` with `(a·b)·c ≠ a·(b·c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AssocWitness {
    pub a: Symbol,
    pub b: Symbol,
    pub c: Symbol,
    /// `(a·b)·c`
    pub left_value: Symbol,
    /// `a·(b·c)`
    pub right_value: Symbol,
}

impl AssocWitness {
    fn at(table: &CayleyTable, a: usize, b: usize, c: usize) -> Option<Self> {
        let left = table.op(table.op(a, b), c);
        let right = table.op(a, table.op(b, c));
        (left != right).then(|| AssocWitness {
            a: Symbol::new(a),
            b: Symbol::new(b),
            c: Symbol::new(c),
            left_value: Symbol::new(left),
            right_value: Symbol::new(right),
        })
    }

    /// Recomputes both bracketings from `table` and confirms they differ and
    /// match the recorded values.
    pub fn revalidate(&self, table: &CayleyTable) -> bool {
        let n = table.order();
        if [self.a, self.b, self.c].iter().any(|s| s.index() >= n) {
            return false;
        }
        match AssocWitness::at(table, self.a.index(), self.b.index(), self.c.index()) {
            Some(w) => w == *self,
            None => false,
        }
    }

    /// `a·b`
    pub fn left_inner(&self, table: &CayleyTable) -> Symbol {
        Symbol::new(table.op(self.a.index(), self.b.index()))
    }

    /// `b·c`
    pub fn right_inner(&self, table: &CayleyTable) -> Symbol {
        Symbol::new(table.op(self.b.index(), self.c.index()))
    }
}

/// Two-sided inverses relative to `identity`; `pairs[i]` is the inverse of `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InverseMap {
    pub identity: Symbol,
    pub pairs: Vec<Symbol>,
}

impl InverseMap {
    pub fn inverse(&self, s: Symbol) -> Symbol {
        self.pairs[s.index()]
    }

    pub fn is_involution(&self) -> bool {
        self.pairs
            .iter()
            .enumerate()
            .all(|(i, inv)| self.pairs[inv.index()].index() == i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InverseError {
    #[error("symbol {0} is not a two-sided identity")]
    NotAnIdentity(Symbol),
    #[error("row {0} does not contain the identity")]
    RowMissingIdentity(Symbol),
    #[error("column {0} does not contain the identity")]
    ColumnMissingIdentity(Symbol),
}

/// All `a` with `a·a = a`, ascending.
pub fn idempotents(table: &CayleyTable) -> Vec<Symbol> {
    (0..table.order())
        .filter(|&a| table.op(a, a) == a)
        .map(Symbol::new)
        .collect()
}

pub fn is_identity(table: &CayleyTable, e: Symbol) -> bool {
    let e = e.index();
    e < table.order() && (0..table.order()).all(|x| table.op(e, x) == x && table.op(x, e) == x)
}

/// The two-sided identity, if there is one. There is never more than one.
pub fn find_identity(table: &CayleyTable) -> Option<Symbol> {
    (0..table.order())
        .map(Symbol::new)
        .find(|&e| is_identity(table, e))
}

/// Checks all `n³` triples in lexicographic order and returns the first
/// failure.
pub fn associativity_naive(table: &CayleyTable) -> Option<AssocWitness> {
    let n = table.order();
    for a in 0..n {
        for b in 0..n {
            let ab = table.op(a, b);
            for c in 0..n {
                if table.op(ab, c) != table.op(a, table.op(b, c)) {
                    return AssocWitness::at(table, a, b, c);
                }
            }
        }
    }
    None
}

/// Greedy generating set: repeatedly take the smallest element outside the
/// current closure and close again under the operation.
pub fn generating_set(table: &CayleyTable) -> Vec<Symbol> {
    let n = table.order();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::with_capacity(n);
    let mut generators = Vec::new();

    while let Some(g) = (0..n).find(|&x| !inside[x]) {
        generators.push(Symbol::new(g));
        inside[g] = true;
        members.push(g);
        // Each newly admitted element is multiplied against every member
        // (including itself) on both sides before it is considered done.
        let mut next = members.len() - 1;
        while next < members.len() {
            let x = members[next];
            let mut k = 0;
            while k <= next {
                let y = members[k];
                for p in [table.op(x, y), table.op(y, x)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
                k += 1;
            }
            next += 1;
        }
    }
    generators
}

/// Light's test: the elements `g` satisfying `(x·g)·y = x·(g·y)` for all
/// `x, y` are closed under the operation, so checking a generating set
/// decides associativity for any table.
pub fn associativity_light(table: &CayleyTable) -> Option<AssocWitness> {
    associativity_light_with(table, &generating_set(table))
}

/// Light's test against a caller-supplied set of middle elements. The
/// verdict is only decisive when `generators` generates the whole table.
pub fn associativity_light_with(
    table: &CayleyTable,
    generators: &[Symbol],
) -> Option<AssocWitness> {
    let n = table.order();
    for &g in generators {
        let g = g.index();
        for x in 0..n {
            let xg = table.op(x, g);
            for y in 0..n {
                if table.op(xg, y) != table.op(x, table.op(g, y)) {
                    return AssocWitness::at(table, x, g, y);
                }
            }
        }
    }
    None
}

/// For each `i`, finds `l` with `i·l = e` and `m` with `m·i = e`. Returns
/// `Ok(None)` when some element only has one-sided inverses (`l ≠ m`).
pub fn inverse_map(table: &CayleyTable, e: Symbol) -> Result<Option<InverseMap>, InverseError> {
    if !is_identity(table, e) {
        return Err(InverseError::NotAnIdentity(e));
    }
    let n = table.order();
    let target = e.index();
    let mut pairs = Vec::with_capacity(n);
    let mut two_sided = true;
    for i in 0..n {
        let right = (0..n)
            .find(|&l| table.op(i, l) == target)
            .ok_or(InverseError::RowMissingIdentity(Symbol::new(i)))?;
        let left = (0..n)
            .find(|&m| table.op(m, i) == target)
            .ok_or(InverseError::ColumnMissingIdentity(Symbol::new(i)))?;
        if right != left {
            two_sided = false;
        }
        pairs.push(Symbol::new(right));
    }
    Ok(two_sided.then_some(InverseMap { identity: e, pairs }))
}

/// The lexicographically first `(a, b)` with `a·b ≠ b·a`, if any.
pub fn is_commutative(table: &CayleyTable) -> Option<(Symbol, Symbol)> {
    let n = table.order();
    for a in 0..n {
        for b in a + 1..n {
            if table.op(a, b) != table.op(b, a) {
                return Some((Symbol::new(a), Symbol::new(b)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{
        cyclic_table, direct_product, fixture_intro_square, fixture_remark_loop,
    };

    fn s(i: usize) -> Symbol {
        Symbol::new(i)
    }

    /// S3 as permutations of {0,1,2} in lexicographic order, composed
    /// `(p·q)(x) = p(q(x))`.
    fn symmetric3() -> CayleyTable {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut entries = Vec::new();
        for p in perms {
            for q in perms {
                entries.push(index([p[q[0]], p[q[1]], p[q[2]]]));
            }
        }
        CayleyTable::from_entries(6, entries).unwrap()
    }

    #[test]
    fn idempotents_on_fixtures() {
        assert!(idempotents(&fixture_intro_square()).is_empty());
        for n in 1..10 {
            assert_eq!(idempotents(&cyclic_table(n).unwrap()), vec![s(0)]);
        }
        assert_eq!(idempotents(&fixture_remark_loop(true)), vec![s(0)]);
    }

    #[test]
    fn identity_on_fixtures() {
        assert_eq!(find_identity(&fixture_remark_loop(true)), Some(s(0)));
        assert_eq!(find_identity(&fixture_intro_square()), None);
        assert_eq!(find_identity(&cyclic_table(5).unwrap()), Some(s(0)));
    }

    #[test]
    fn remark_witness_is_valid() {
        let t = fixture_remark_loop(true);
        // (4·2)·4 = 6·4 = 3 and 4·(2·4) = 4·5 = 2, 1-based
        let w = AssocWitness {
            a: s(3),
            b: s(1),
            c: s(3),
            left_value: s(2),
            right_value: s(1),
        };
        assert!(w.revalidate(&t));
        assert_eq!(w.left_inner(&t), s(5));
        assert_eq!(w.right_inner(&t), s(4));
        let first = associativity_naive(&t).expect("the loop is not associative");
        assert!(first.revalidate(&t));
        assert!((first.a, first.b, first.c) <= (w.a, w.b, w.c));
    }

    #[test]
    fn naive_returns_lexicographically_first() {
        let t = fixture_intro_square();
        let w = associativity_naive(&t).unwrap();
        let n = t.order();
        let mut brute = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t.op(t.op(a, b), c) != t.op(a, t.op(b, c)) {
                        brute = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(Some((w.a.index(), w.b.index(), w.c.index())), brute);
    }

    #[test]
    fn cyclic_is_associative_both_ways() {
        for n in 1..=12 {
            let t = cyclic_table(n).unwrap();
            assert_eq!(associativity_naive(&t), None);
            assert_eq!(associativity_light(&t), None);
        }
        let gens = generating_set(&cyclic_table(12).unwrap());
        // 0 is idempotent so closes on itself; 1 then generates the rest.
        assert_eq!(gens, vec![s(0), s(1)]);
    }

    #[test]
    fn light_finds_failure_on_remark_loop() {
        let t = fixture_remark_loop(true);
        let w = associativity_light(&t).unwrap();
        assert!(w.revalidate(&t));
    }

    #[test]
    fn generating_set_closure_covers_everything() {
        let t = symmetric3();
        let gens = generating_set(&t);
        assert!(!gens.is_empty() && gens.len() <= 3);
        assert_eq!(gens[0], s(0));
    }

    #[test]
    fn inverse_maps() {
        let t = fixture_remark_loop(true);
        let inv = inverse_map(&t, s(0)).unwrap().unwrap();
        let expected: Vec<_> = [0, 2, 1, 3, 5, 4].into_iter().map(s).collect();
        assert_eq!(inv.pairs, expected);
        assert!(inv.is_involution());

        for n in 1..10 {
            let t = cyclic_table(n).unwrap();
            let inv = inverse_map(&t, s(0)).unwrap().unwrap();
            for i in 0..n {
                assert_eq!(inv.inverse(s(i)), s((n - i) % n));
            }
        }
    }

    #[test]
    fn inverse_map_errors() {
        let t = cyclic_table(3).unwrap();
        assert_eq!(
            inverse_map(&t, s(1)),
            Err(InverseError::NotAnIdentity(s(1)))
        );
        // identity 0 but row 2 never reaches it
        let bad = CayleyTable::from_rows(&[[0, 1, 2], [1, 0, 1], [2, 1, 1]]).unwrap();
        assert_eq!(
            inverse_map(&bad, s(0)),
            Err(InverseError::RowMissingIdentity(s(2)))
        );
    }

    #[test]
    fn one_sided_inverses_give_none() {
        // A loop of order 5 where 1·2 = 0 but 2·1 = 4.
        let t = CayleyTable::from_rows(&[
            [0, 1, 2, 3, 4],
            [1, 2, 0, 4, 3],
            [2, 4, 3, 0, 1],
            [3, 0, 4, 1, 2],
            [4, 3, 1, 2, 0],
        ])
        .unwrap();
        assert!(t.is_latin());
        assert_eq!(find_identity(&t), Some(s(0)));
        // 1·2 = 0 while 2·1 = 4; the left inverse of 1 is 3
        assert_eq!(inverse_map(&t, s(0)), Ok(None));
    }

    #[test]
    fn commutativity() {
        for n in 1..8 {
            assert_eq!(is_commutative(&cyclic_table(n).unwrap()), None);
        }
        let z2 = cyclic_table(2).unwrap();
        assert_eq!(is_commutative(&direct_product(&z2, &z2)), None);
        let s3 = symmetric3();
        assert_eq!(associativity_naive(&s3), None);
        // brute pair scan: (0 2)(1 2) ≠ (1 2)(0 2) are indices 1 and 2
        assert_eq!(is_commutative(&s3), Some((s(1), s(2))));
    }
}
