//! Seeded inverse-CDF sampling.
//!
//! The generator is ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64(seed)`. Shots are split into batches of [`BATCH_SHOTS`];
//! batch `b` draws from stream `b` of that generator, so the histogram depends
//! on `(seed, shots)` only and never on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::Distribution;

pub const BATCH_SHOTS: u64 = 1 << 16;

pub const DEFAULT_SEED: u64 = 0x5EED_0001;

/// Generator for batch `batch` of a run seeded with `seed`.
pub fn batch_rng(seed: u64, batch: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

/// Splits `total` trials into `(batch index, size)` pairs.
pub(crate) fn batches(total: u64) -> impl ParallelIterator<Item = (u64, u64)> {
    let count = total.div_ceil(BATCH_SHOTS);
    (0..count)
        .into_par_iter()
        .map(move |b| (b, BATCH_SHOTS.min(total - b * BATCH_SHOTS)))
}

/// Result of a sampling run: counts per basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotRecord {
    pub n: usize,
    pub seed: u64,
    pub shots: u64,
    pub histogram: Vec<u64>,
}

impl ShotRecord {
    pub fn frequencies(&self) -> Vec<f64> {
        self.histogram
            .iter()
            .map(|&k| k as f64 / self.shots as f64)
            .collect()
    }

    /// Total-variation distance between the empirical frequencies and `d`.
    pub fn total_variation(&self, d: &Distribution) -> f64 {
        0.5 * self
            .frequencies()
            .iter()
            .zip(d.probs())
            .map(|(f, p)| (f - p).abs())
            .sum::<f64>()
    }
}

struct InverseCdf {
    cdf: Vec<f64>,
    last_support: usize,
}

impl InverseCdf {
    fn new(d: &Distribution) -> Self {
        let mut acc = 0.0;
        let cdf = d
            .probs()
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        let last_support = d.probs().iter().rposition(|&p| p > 0.0).unwrap_or(0);
        InverseCdf { cdf, last_support }
    }

    /// First index whose cumulative mass exceeds `u`; outcomes with zero
    /// probability are never returned.
    fn draw(&self, u: f64) -> usize {
        self.cdf.partition_point(|&c| c <= u).min(self.last_support)
    }
}

/// Draws `shots` i.i.d. outcomes from `d`.
pub fn sample(d: &Distribution, seed: u64, shots: u64) -> Result<ShotRecord> {
    if shots == 0 {
        return Err(Error::Precondition("shots must be at least 1".into()));
    }
    let table = InverseCdf::new(d);
    let dim = d.len();
    let histogram = batches(shots)
        .map(|(b, size)| {
            let mut rng = batch_rng(seed, b);
            let mut counts = vec![0u64; dim];
            for _ in 0..size {
                counts[table.draw(rng.gen::<f64>())] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; dim],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(ShotRecord {
        n: d.n(),
        seed,
        shots,
        histogram,
    })
}
