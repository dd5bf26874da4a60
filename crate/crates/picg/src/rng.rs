//! Seedable, splittable random streams with a pinned generator.
//!
//! Every stochastic operation in this crate draws from a [`RandomStream`]:
//! a ChaCha8 generator keyed by a 64-bit seed (expanded with SplitMix64 by
//! `rand_chacha`) plus a 64-bit stream id. A plain seeded stream is stream 0;
//! run `k` of an ensemble uses stream `k` of the same master seed. The
//! generator and all derivation rules below are fixed, so identical inputs
//! reproduce identical traces on any platform.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Deterministic source of randomness for growth runs and sampling.
#[derive(Debug, Clone)]
pub struct RandomStream {
    rng: ChaCha8Rng,
    seed: u64,
    stream: u64,
}

impl RandomStream {
    /// Stream 0 of `seed`; what single growth runs use.
    pub fn new(seed: u64) -> Self {
        Self::for_run(seed, 0)
    }

    /// Stream `run` of `seed`; run k of an ensemble uses `for_run(master, k)`.
    pub fn for_run(seed: u64, run: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(run);
        Self {
            rng,
            seed,
            stream: run,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw from `[0, 1)` using the top 53 bits of one `u64`.
    pub fn uniform_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Unbiased uniform index in `0..n` by rejection below the largest
    /// multiple of `n` (at most one extra draw every 2^32 calls in practice).
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index() requires a non-empty range");
        let n64 = n as u64;
        let zone = u64::MAX - (u64::MAX % n64 + 1) % n64;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return (x % n64) as usize;
            }
        }
    }

    /// One fair bit.
    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Index drawn with probability proportional to `weights[i]`.
    /// Consumes exactly one `u64`. Weights must be non-negative with a
    /// positive sum; rounding at the top of the range falls to the last
    /// positive-weight entry.
    pub fn weighted_index(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        assert!(
            total > 0.0 && total.is_finite(),
            "weighted_index() requires a positive finite weight sum"
        );
        let target = self.uniform_f64() * total;
        let mut acc = 0.0;
        for (i, &w) in weights.iter().enumerate() {
            acc += w;
            if target < acc {
                return i;
            }
        }
        // target == total up to rounding
        weights
            .iter()
            .rposition(|&w| w > 0.0)
            .expect("positive total implies a positive weight")
    }
}
