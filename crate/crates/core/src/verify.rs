//! Theorem-scale runs: every associative Latin square examined must pass the
//! idempotent → identity → inverse pipeline.

use alloc::vec::Vec;
use core::time::Duration;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::associativity_naive;
use crate::classify::{classify, theorem_check, ProofStep};
use crate::generate::{
    enumerate_latin, random_latin, EnumPrefix, GenerateError, OrderGuard, SampleConfig,
};
use crate::table::CayleyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum VerifyMode {
    Exhaustive,
    Sampled,
}

/// An associative Latin square on which one of the proof stages failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremViolation {
    pub table: CayleyTable,
    pub step: ProofStep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub total_latin: u64,
    pub associative_count: u64,
    /// Associative tables that `classify` put in `Group` or `AbelianGroup`.
    pub group_classified: u64,
    pub violations: Vec<TheoremViolation>,
    pub mode: VerifyMode,
    pub samples: Option<u64>,
    /// Left at zero here; callers with a clock fill it in.
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(n: usize, mode: VerifyMode) -> Self {
        VerificationReport {
            n,
            total_latin: 0,
            associative_count: 0,
            group_classified: 0,
            violations: Vec::new(),
            mode,
            samples: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Runs the per-table pipeline on one Latin square and tallies it.
    pub fn record(&mut self, table: &CayleyTable) {
        self.total_latin += 1;
        if associativity_naive(table).is_some() {
            return;
        }
        self.associative_count += 1;
        if classify(table).class.is_group() {
            self.group_classified += 1;
        }
        let verdict = theorem_check(table);
        if !verdict.holds {
            self.violations.push(TheoremViolation {
                table: table.clone(),
                step: verdict.failed_step().unwrap_or(ProofStep::Idempotent),
            });
        }
    }

    /// Folds in a report over a disjoint part of the same run. Counts add;
    /// violations are appended, so merge parts in prefix order for a stable
    /// violation list.
    pub fn merge(&mut self, other: VerificationReport) {
        debug_assert_eq!(self.n, other.n);
        self.total_latin += other.total_latin;
        self.associative_count += other.associative_count;
        self.group_classified += other.group_classified;
        self.violations.extend(other.violations);
        self.samples = match (self.samples, other.samples) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0) + b.unwrap_or(0)),
        };
        self.elapsed = self.elapsed.max(other.elapsed);
    }
}

/// Enumerates every Latin square of order `n` and checks each associative one.
pub fn verify_exhaustive(n: usize, guard: OrderGuard) -> Result<VerificationReport, GenerateError> {
    verify_prefix(n, None, guard)
}

/// The part of an exhaustive run that extends `prefix`.
pub fn verify_prefix(
    n: usize,
    prefix: Option<&EnumPrefix>,
    guard: OrderGuard,
) -> Result<VerificationReport, GenerateError> {
    let mut report = VerificationReport::new(n, VerifyMode::Exhaustive);
    enumerate_latin(n, prefix, guard, |t| report.record(t))?;
    Ok(report)
}

/// Prefixes used to split an exhaustive run: one per first row.
pub fn partition_prefixes(n: usize) -> Vec<EnumPrefix> {
    EnumPrefix::partition(n, n)
}

/// An exhaustive run done part by part over [`partition_prefixes`] and merged.
pub fn verify_partitioned(
    n: usize,
    guard: OrderGuard,
) -> Result<VerificationReport, GenerateError> {
    guard.check(n)?;
    let mut report = VerificationReport::new(n, VerifyMode::Exhaustive);
    for prefix in partition_prefixes(n) {
        report.merge(verify_prefix(n, Some(&prefix), guard)?);
    }
    Ok(report)
}

/// Seed of the `trial`-th sample in a run seeded with `seed`.
pub fn trial_seeds(seed: u64, trials: u64) -> impl Iterator<Item = u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(move |_| rng.next_u64())
}

/// Checks `trials` random squares drawn with [`random_latin`] at the default
/// step count.
pub fn verify_sampled(
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<VerificationReport, GenerateError> {
    let mut report = VerificationReport::new(n, VerifyMode::Sampled);
    report.samples = Some(trials);
    for trial_seed in trial_seeds(seed, trials) {
        let table = random_latin(SampleConfig::new(n, trial_seed))?;
        report.record(&table);
    }
    Ok(report)
}

/// Number of associative Latin squares of order `n`, i.e. group tables on a
/// labelled `n`-set.
pub fn associative_census(n: usize, guard: OrderGuard) -> Result<u64, GenerateError> {
    let mut count = 0;
    enumerate_latin(n, None, guard, |t| {
        if associativity_naive(t).is_none() {
            count += 1;
        }
    })?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small_orders() {
        // (n, total, associative); associative counts are Σ n!/|Aut(G)|
        // over groups G of order n: 3 = 6/2, 16 = 24/2 + 24/6.
        for (n, total, assoc) in [(1, 1, 1), (2, 2, 2), (3, 12, 3), (4, 576, 16)] {
            let r = verify_exhaustive(n, OrderGuard::Default).unwrap();
            assert_eq!((r.total_latin, r.associative_count), (total, assoc));
            assert_eq!(r.group_classified, assoc);
            assert!(r.holds());
            assert_eq!(r.mode, VerifyMode::Exhaustive);
        }
    }

    #[test]
    fn partitioned_equals_sequential() {
        for n in 1..=4 {
            let a = verify_exhaustive(n, OrderGuard::Default).unwrap();
            let b = verify_partitioned(n, OrderGuard::Default).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn census() {
        assert_eq!(associative_census(1, OrderGuard::Default), Ok(1));
        assert_eq!(associative_census(2, OrderGuard::Default), Ok(2));
        assert_eq!(associative_census(4, OrderGuard::Default), Ok(16));
        assert!(associative_census(6, OrderGuard::Default).is_err());
    }

    #[test]
    fn sampled_runs() {
        let r = verify_sampled(2, 100, 9).unwrap();
        assert_eq!((r.total_latin, r.associative_count), (100, 100));
        assert!(r.holds());
        assert_eq!(r.samples, Some(100));
        assert_eq!(verify_sampled(5, 50, 3), verify_sampled(5, 50, 3));
    }

    #[test]
    fn non_latin_input_is_inapplicable() {
        // associative but not Latin: x·y = x
        let left_zero = CayleyTable::from_rows(&[[0, 0], [1, 1]]).unwrap();
        let mut r = VerificationReport::new(2, VerifyMode::Sampled);
        r.record(&left_zero);
        assert_eq!(r.associative_count, 1);
        assert!(r.holds());
    }
}
