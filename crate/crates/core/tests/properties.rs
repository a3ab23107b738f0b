use cayley_core::axioms::{
    associativity_light, associativity_naive, find_identity, idempotents, inverse_map,
};
use cayley_core::classify::{
    classify, classify_with, theorem_check, AssocAlgorithm, StructureClass,
};
use cayley_core::generate::{
    cyclic_table, direct_product, enumerate_latin, random_latin, OrderGuard, SampleConfig,
};
use cayley_core::table::{Axis, CayleyTable, Symbol};
use cayley_core::verify::associative_census;
use proptest::prelude::*;

fn latin(n: usize, seed: u64) -> CayleyTable {
    random_latin(SampleConfig::new(n, seed)).unwrap()
}

fn arb_latin(max_n: usize) -> impl Strategy<Value = CayleyTable> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| latin(n, seed))
}

/// Arbitrary (usually non-Latin) operation tables.
fn arb_magma(max_n: usize) -> impl Strategy<Value = CayleyTable> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n)
            .prop_map(move |entries| CayleyTable::from_entries(n, entries).unwrap())
    })
}

fn arb_group() -> impl Strategy<Value = CayleyTable> {
    proptest::collection::vec(1usize..=4, 1..=3).prop_map(|orders| {
        orders
            .iter()
            .map(|&k| cyclic_table(k).unwrap())
            .reduce(|a, b| direct_product(&a, &b))
            .unwrap()
    })
}

fn perm_of(n: usize, seed: u64) -> Vec<usize> {
    // a random row of a random Latin square is a random-ish permutation
    latin(n, seed).row(0).iter().map(|s| s.index()).collect()
}

fn euler_phi(d: usize) -> usize {
    (1..=d).filter(|&k| gcd(k, d) == 1).count()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn latin_check_is_label_invariant(t in arb_magma(6), seed in any::<u64>()) {
        let perm = perm_of(t.order(), seed);
        let r = t.relabel(&perm).unwrap();
        prop_assert_eq!(t.latin_check().is_latin, r.latin_check().is_latin);
    }

    #[test]
    fn injected_duplicate_is_reported_exactly(t in arb_latin(9), r in any::<usize>(), c in any::<usize>(), shift in 1usize..9) {
        let n = t.order();
        prop_assume!(n >= 2);
        let (r, c) = (r % n, c % n);
        let old = t.op(r, c);
        let new = (old + 1 + shift % (n - 1)) % n;
        prop_assume!(new != old);
        let broken = t.with_entry(r, c, new).unwrap();
        let report = broken.latin_check();
        prop_assert!(!report.is_latin);
        prop_assert_eq!(report.violations.len(), 2);
        let in_row = (0..n).find(|&y| y != c && t.op(r, y) == new).unwrap();
        let in_col = (0..n).find(|&x| x != r && t.op(x, c) == new).unwrap();
        let row_v = report.violations.iter().find(|v| v.axis == Axis::Row).unwrap();
        let col_v = report.violations.iter().find(|v| v.axis == Axis::Column).unwrap();
        prop_assert_eq!(row_v.line_index, r);
        prop_assert_eq!(row_v.symbol, Symbol::new(new));
        prop_assert_eq!((row_v.first_position, row_v.second_position), (c.min(in_row), c.max(in_row)));
        prop_assert_eq!(col_v.line_index, c);
        prop_assert_eq!((col_v.first_position, col_v.second_position), (r.min(in_col), r.max(in_col)));
    }

    #[test]
    fn light_agrees_with_naive_on_any_table(t in arb_magma(7)) {
        let naive = associativity_naive(&t);
        let light = associativity_light(&t);
        prop_assert_eq!(naive.is_some(), light.is_some());
        if let Some(w) = naive { prop_assert!(w.revalidate(&t)); }
        if let Some(w) = light { prop_assert!(w.revalidate(&t)); }
    }

    #[test]
    fn light_agrees_with_naive_on_latin(t in arb_latin(12)) {
        prop_assert_eq!(associativity_naive(&t).is_some(), associativity_light(&t).is_some());
    }

    #[test]
    fn group_tables_satisfy_every_step(g in arb_group(), seed in any::<u64>()) {
        // relabelled direct products of cyclic groups
        let t = g.relabel(&perm_of(g.order(), seed)).unwrap();
        prop_assert!(associativity_naive(&t).is_none());
        prop_assert!(associativity_light(&t).is_none());
        let idem = idempotents(&t);
        prop_assert_eq!(idem.len(), 1);
        prop_assert_eq!(find_identity(&t), Some(idem[0]));
        let inv = inverse_map(&t, idem[0]).unwrap();
        prop_assert!(inv.is_some());
        prop_assert!(inv.unwrap().is_involution());
        let report = classify(&t);
        prop_assert!(report.class.is_group());
        prop_assert!(theorem_check(&t).holds);
        for &o in report.order_profile.as_ref().unwrap() {
            prop_assert_eq!(t.order() % o, 0);
        }
    }

    #[test]
    fn relabeling_preserves_axioms(t in arb_magma(5), seed in any::<u64>()) {
        let perm = perm_of(t.order(), seed);
        let r = t.relabel(&perm).unwrap();
        let mapped: Vec<Symbol> = {
            let mut v: Vec<Symbol> = idempotents(&t).iter().map(|s| Symbol::new(perm[s.index()])).collect();
            v.sort();
            v
        };
        prop_assert_eq!(idempotents(&r), mapped);
        prop_assert_eq!(find_identity(&r), find_identity(&t).map(|e| Symbol::new(perm[e.index()])));
        prop_assert_eq!(associativity_naive(&r).is_some(), associativity_naive(&t).is_some());
        let (a, b) = (classify(&t), classify(&r));
        prop_assert_eq!(a.class, b.class);
        prop_assert_eq!(a.order_profile, b.order_profile);
    }

    #[test]
    fn latin_classes_are_consistent(t in arb_latin(8)) {
        let r = classify(&t);
        prop_assert_eq!(r.associative, r.assoc_witness.is_none());
        match r.class {
            StructureClass::Loop => prop_assert!(r.identity.is_some() && r.assoc_witness.is_some()),
            StructureClass::Quasigroup => prop_assert!(r.identity.is_none()),
            StructureClass::Group | StructureClass::AbelianGroup => {
                prop_assert!(r.inverses.is_some());
                prop_assert!(r.order_profile.is_some());
                prop_assert!(theorem_check(&t).holds);
            }
            StructureClass::NotLatin => prop_assert!(false, "sampler produced a non-Latin table"),
        }
        let light = classify_with(&t, AssocAlgorithm::Light);
        prop_assert_eq!(light.class, r.class);
    }

    #[test]
    fn direct_products_of_latin_squares_are_latin(a in arb_latin(5), b in arb_latin(5)) {
        prop_assert!(direct_product(&a, &b).latin_check().is_latin);
    }
}

#[test]
fn cyclic_order_profiles_follow_euler_phi() {
    for n in 1..=24 {
        let profile = classify(&cyclic_table(n).unwrap()).order_profile.unwrap();
        for d in (1..=n).filter(|d| n % d == 0) {
            let count = profile.iter().filter(|&&o| o == d).count();
            assert_eq!(count, euler_phi(d), "n = {n}, d = {d}");
        }
        assert_eq!(profile.len(), n);
    }
}

#[test]
fn paper_steps_hold_on_every_small_square() {
    for n in 1..=4 {
        enumerate_latin(n, None, OrderGuard::Default, |t| {
            if associativity_naive(t).is_some() {
                return;
            }
            let idem = idempotents(t);
            assert!(!idem.is_empty(), "I-1");
            assert!(idem.iter().all(|&e| find_identity(t) == Some(e)), "I-2");
            assert_eq!(idem.len(), 1);
            assert!(inverse_map(t, idem[0]).unwrap().is_some(), "I-3");
        })
        .unwrap();
    }
}

#[test]
fn census_matches_group_classification() {
    for n in 1..=4 {
        let mut groups = 0u64;
        enumerate_latin(n, None, OrderGuard::Default, |t| {
            if classify(t).class.is_group() {
                groups += 1;
            }
        })
        .unwrap();
        assert_eq!(associative_census(n, OrderGuard::Default), Ok(groups));
    }
}
