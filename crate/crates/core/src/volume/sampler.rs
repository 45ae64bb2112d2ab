//! Seeded uniform sampling on the polydisk with common random numbers.
//!
//! The sample stream is split into fixed-size chunks; chunk `i` draws from
//! ChaCha8 stream `i` of the seed. Chunks run in parallel and their integer
//! counts are summed, so results do not depend on scheduling or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::SampledPotential;

pub(crate) const CHUNK_SAMPLES: u64 = 1 << 15;

/// For each threshold `t_j` (any order), the number of samples with `φ < t_j`.
///
/// NaN values of `φ` count as outside every sublevel set.
pub(crate) fn sublevel_counts(
    potential: &SampledPotential,
    thresholds: &[f64],
    samples: u64,
    seed: u64,
) -> Vec<u64> {
    let mut order: Vec<usize> = (0..thresholds.len()).collect();
    order.sort_by(|&a, &b| thresholds[a].total_cmp(&thresholds[b]));
    let sorted: Vec<f64> = order.iter().map(|&i| thresholds[i]).collect();

    let chunks = samples.div_ceil(CHUNK_SAMPLES);
    let per_chunk: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let n = CHUNK_SAMPLES.min(samples - chunk * CHUNK_SAMPLES);
            chunk_histogram(potential, &sorted, n, seed, chunk)
        })
        .collect();

    let mut hist = vec![0u64; sorted.len() + 1];
    for h in &per_chunk {
        for (acc, x) in hist.iter_mut().zip(h) {
            *acc += x;
        }
    }
    // hist[i] = samples whose value lies in [sorted[i-1], sorted[i]); the
    // count below sorted[j] is the prefix sum up to j.
    let mut below_sorted = vec![0u64; sorted.len()];
    let mut running = 0;
    for j in 0..sorted.len() {
        running += hist[j];
        below_sorted[j] = running;
    }
    let mut out = vec![0u64; thresholds.len()];
    for (j, &i) in order.iter().enumerate() {
        out[i] = below_sorted[j];
    }
    out
}

fn chunk_histogram(
    potential: &SampledPotential,
    sorted: &[f64],
    n: u64,
    seed: u64,
    chunk: u64,
) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let dim = potential.dim();
    let radius = potential.radius();
    let mut point = vec![0.0; 2 * dim];
    // hist[i] counts values in [sorted[i-1], sorted[i]), hist[len] the rest.
    let mut hist = vec![0u64; sorted.len() + 1];
    for _ in 0..n {
        for i in 0..dim {
            let rho = radius * rng.random::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.random::<f64>();
            point[2 * i] = rho * theta.cos();
            point[2 * i + 1] = rho * theta.sin();
        }
        let value = potential.eval(&point);
        let bin = if value.is_nan() {
            sorted.len()
        } else {
            sorted.partition_point(|&t| t <= value)
        };
        hist[bin] += 1;
    }
    hist
}
