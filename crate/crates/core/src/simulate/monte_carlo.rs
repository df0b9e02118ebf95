//! Seeded simulation of the probe/feedback protocol.
//!
//! Stream splitting: user `j` draws from ChaCha8 seeded with the master seed
//! on stream `j`; sample `s` consumes the 64-bit word at position `2s` of
//! that stream. Shards seek directly to their first sample, so results do
//! not depend on the shard count, and adding users leaves the draws of
//! existing users unchanged.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::evaluate::{analytic_performance, EvaluationReport};
use super::scenario::Scenario;
use crate::error::Result;
use crate::partition::Partition;
use crate::synthesis::Codebook;

/// Monte Carlo estimate of the weighted expected width.
#[derive(Debug, Clone, PartialEq)]
pub struct Empirical {
    pub mean: f64,
    /// `None` for a single sample.
    pub std_error: Option<f64>,
    pub samples: u64,
    pub per_user_mean: Vec<f64>,
}

/// Samples per shard when the caller does not pick a shard count.
const DEFAULT_SHARD_SIZE: u64 = 1 << 16;

/// Simulates `samples` frames per user and attaches the estimate to the
/// analytic report.
pub fn run_monte_carlo(
    scenario: &Scenario,
    codebook: &Codebook,
    samples: u64,
    seed: u64,
    scheme: &str,
) -> Result<EvaluationReport> {
    let shards = samples.div_ceil(DEFAULT_SHARD_SIZE).max(1) as usize;
    run_monte_carlo_sharded(scenario, codebook, samples, seed, scheme, shards)
}

pub fn run_monte_carlo_sharded(
    scenario: &Scenario,
    codebook: &Codebook,
    samples: u64,
    seed: u64,
    scheme: &str,
    shards: usize,
) -> Result<EvaluationReport> {
    let mut report = analytic_performance(scenario, codebook, scheme)?;
    report.empirical = Some(simulate(scenario, codebook, samples.max(1), seed, shards.max(1)));
    Ok(report)
}

fn shard_ranges(samples: u64, shards: usize) -> Vec<(u64, u64)> {
    let shards = (shards as u64).min(samples);
    (0..shards)
        .map(|k| (samples * k / shards, samples * (k + 1) / shards))
        .collect()
}

fn simulate(scenario: &Scenario, codebook: &Codebook, samples: u64, seed: u64, shards: usize) -> Empirical {
    let partition = codebook.induced_partition();
    let index: HashMap<u64, usize> = partition
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id, i))
        .collect();
    let widths: Vec<f64> = partition.cells().iter().map(|c| c.width()).collect();
    let ranges = shard_ranges(samples, shards);

    let mut per_user_mean = Vec::with_capacity(scenario.users().len());
    let mut mean = 0.0;
    let mut var_of_mean = 0.0;
    for (j, user) in scenario.users().iter().enumerate() {
        let per_shard: Vec<Vec<u64>> = ranges
            .par_iter()
            .map(|&(lo, hi)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(j as u64);
                rng.set_word_pos(2 * lo as u128);
                let mut counts = vec![0u64; widths.len()];
                for _ in lo..hi {
                    // (0, 1] so the draw never lands on a piece's open end
                    let u = 1.0 - rng.gen::<f64>();
                    let aod = user.pdf.quantile(u);
                    counts[locate(codebook, &partition, &index, aod)] += 1;
                }
                counts
            })
            .collect();
        // integer counts merge exactly, whatever the sharding
        let mut counts = vec![0u64; widths.len()];
        for c in &per_shard {
            for (acc, x) in counts.iter_mut().zip(c) {
                *acc += x;
            }
        }
        let n = samples as f64;
        let m: f64 = counts
            .iter()
            .zip(&widths)
            .map(|(&c, w)| c as f64 * w)
            .sum::<f64>()
            / n;
        if samples > 1 {
            let ss: f64 = counts
                .iter()
                .zip(&widths)
                .map(|(&c, w)| c as f64 * (w - m) * (w - m))
                .sum();
            var_of_mean += user.weight * user.weight * ss / (n - 1.0) / n;
        }
        mean += user.weight * m;
        per_user_mean.push(m);
    }
    Empirical {
        mean,
        std_error: (samples > 1).then(|| var_of_mean.sqrt()),
        samples,
        per_user_mean,
    }
}

fn locate(codebook: &Codebook, partition: &Partition, index: &HashMap<u64, usize>, aod: f64) -> usize {
    if let Some(&i) = index.get(&codebook.signature_key(aod)) {
        return i;
    }
    // only reachable within ANGLE_EPS of a merged beam edge
    partition
        .cells()
        .iter()
        .position(|c| c.contains(aod))
        .unwrap_or(0)
}
