#![allow(dead_code)]

use beamalign::angular::{region, AngularPdf, Arc, TAU};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sorted cut points in `(0, 2pi)`, at least `gap` apart.
pub fn cuts(rng: &mut ChaCha8Rng, count: usize, gap: f64) -> Vec<f64> {
    let mut c: Vec<f64> = (0..count).map(|_| rng.gen_range(gap..TAU - gap)).collect();
    c.sort_by(f64::total_cmp);
    c.dedup_by(|b, a| *b - *a < gap);
    c
}

/// Piecewise-constant pdf with up to `max_pieces` pieces and random masses.
pub fn random_pdf(rng: &mut ChaCha8Rng, max_pieces: usize) -> AngularPdf {
    let k = rng.gen_range(1..=max_pieces);
    let mut edges = vec![0.0];
    edges.extend(cuts(rng, k - 1, 1e-3));
    edges.push(TAU);
    let masses: Vec<f64> = (1..edges.len()).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = masses.iter().sum();
    let pieces: Vec<(f64, f64, f64)> = edges
        .windows(2)
        .zip(&masses)
        .map(|(w, m)| (w[0], w[1], m / total))
        .collect();
    AngularPdf::from_masses(&pieces).unwrap()
}

/// Pdf whose pieces sit on multiples of `2pi/steps`.
pub fn grid_pdf(rng: &mut ChaCha8Rng, steps: usize, max_pieces: usize) -> AngularPdf {
    let step = TAU / steps as f64;
    let k = rng.gen_range(1..=max_pieces.min(steps));
    let mut idx: Vec<usize> = (0..k - 1).map(|_| rng.gen_range(1..steps)).collect();
    idx.sort_unstable();
    idx.dedup();
    let mut edges = vec![0usize];
    edges.extend(idx);
    edges.push(steps);
    let masses: Vec<f64> = (1..edges.len()).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = masses.iter().sum();
    let pieces: Vec<(f64, f64, f64)> = edges
        .windows(2)
        .zip(&masses)
        .map(|(w, m)| {
            let end = if w[1] == steps { TAU } else { w[1] as f64 * step };
            (w[0] as f64 * step, end, m / total)
        })
        .collect();
    AngularPdf::from_masses(&pieces).unwrap()
}

/// Union of up to four random arcs, canonicalized.
pub fn random_region(rng: &mut ChaCha8Rng) -> Vec<Arc> {
    let n = rng.gen_range(1..=4);
    region::canonicalize((0..n).flat_map(|_| {
        let s = rng.gen_range(0.0..TAU);
        let w = rng.gen_range(0.01..TAU - 0.01);
        Arc::span(s, w).unwrap()
    }))
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = w.iter().sum();
    let mut w: Vec<f64> = w.iter().map(|x| x / total).collect();
    // exact unit sum
    let head: f64 = w[..n - 1].iter().sum();
    w[n - 1] = 1.0 - head;
    w
}
