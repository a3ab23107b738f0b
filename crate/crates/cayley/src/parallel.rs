//! Thread fan-out for enumeration and verification.
//!
//! Work is split into units with a fixed order (first-row prefixes, or trial
//! indices), dealt round-robin to workers, and merged back in unit order, so
//! the result does not depend on the worker count.

use std::thread;
use std::time::Instant;

use cayley_core::generate::{
    enumerate_latin, random_latin, GenerateError, OrderGuard, SampleConfig,
};
use cayley_core::verify::{
    partition_prefixes, trial_seeds, verify_prefix, VerificationReport, VerifyMode,
};

/// Runs `job` on every unit across `workers` threads; results come back in
/// unit order.
fn fan_out<U, R, F>(units: &[U], workers: usize, job: F) -> Vec<R>
where
    U: Sync,
    R: Send,
    F: Fn(&U) -> R + Sync,
{
    let workers = workers.clamp(1, units.len().max(1));
    if workers == 1 {
        return units.iter().map(&job).collect();
    }
    let mut indexed: Vec<(usize, R)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let job = &job;
                scope.spawn(move || {
                    units
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, u)| (i, job(u)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    indexed.sort_by_key(|(i, _)| *i);
    indexed.into_iter().map(|(_, r)| r).collect()
}

/// Exhaustive verification over `workers` threads. `elapsed` is wall time.
pub fn verify_exhaustive_parallel(
    n: usize,
    guard: OrderGuard,
    workers: usize,
) -> Result<VerificationReport, GenerateError> {
    guard.check(n)?;
    let start = Instant::now();
    let prefixes = partition_prefixes(n);
    let parts = fan_out(&prefixes, workers, |p| verify_prefix(n, Some(p), guard));
    let mut report = VerificationReport::new(n, VerifyMode::Exhaustive);
    for part in parts {
        report.merge(part?);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Sampled verification over `workers` threads, drawing the same tables as
/// the sequential run with the same seed.
pub fn verify_sampled_parallel(
    n: usize,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<VerificationReport, GenerateError> {
    let start = Instant::now();
    let seeds: Vec<u64> = trial_seeds(seed, trials).collect();
    let chunks: Vec<&[u64]> = seeds.chunks(1024).collect();
    let parts = fan_out(&chunks, workers, |chunk| {
        let mut part = VerificationReport::new(n, VerifyMode::Sampled);
        for &s in chunk.iter() {
            part.record(&random_latin(SampleConfig::new(n, s))?);
        }
        Ok::<_, GenerateError>(part)
    });
    let mut report = VerificationReport::new(n, VerifyMode::Sampled);
    for part in parts {
        report.merge(part?);
    }
    report.samples = Some(trials);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Number of Latin squares of order `n`, counted over `workers` threads.
pub fn count_latin_parallel(
    n: usize,
    guard: OrderGuard,
    workers: usize,
) -> Result<u64, GenerateError> {
    guard.check(n)?;
    let prefixes = partition_prefixes(n);
    fan_out(&prefixes, workers, |p| {
        enumerate_latin(n, Some(p), guard, |_| {})
    })
    .into_iter()
    .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cayley_core::verify::{verify_exhaustive, verify_sampled};

    #[test]
    fn fan_out_preserves_order() {
        let units: Vec<u32> = (0..37).collect();
        for workers in [1, 2, 3, 8, 100] {
            assert_eq!(
                fan_out(&units, workers, |u| u * 2),
                units.iter().map(|u| u * 2).collect::<Vec<_>>()
            );
        }
        let none: Vec<u32> = Vec::new();
        assert!(fan_out(&none, 4, |u| *u).is_empty());
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = verify_exhaustive(4, OrderGuard::Default).unwrap();
        for workers in [1, 2, 4] {
            let mut par = verify_exhaustive_parallel(4, OrderGuard::Default, workers).unwrap();
            par.elapsed = seq.elapsed;
            assert_eq!(par, seq);
            assert_eq!(
                count_latin_parallel(4, OrderGuard::Default, workers),
                Ok(576)
            );
        }
    }

    #[test]
    fn sampled_parallel_matches_sequential() {
        let seq = verify_sampled(3, 3000, 11).unwrap();
        for workers in [1, 3] {
            let mut par = verify_sampled_parallel(3, 3000, 11, workers).unwrap();
            par.elapsed = seq.elapsed;
            assert_eq!(par, seq);
        }
    }

    #[test]
    fn guard_applies() {
        assert!(verify_exhaustive_parallel(6, OrderGuard::Default, 2).is_err());
        assert!(count_latin_parallel(7, OrderGuard::Override, 2).is_err());
    }
}
