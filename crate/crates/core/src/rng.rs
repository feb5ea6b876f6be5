//! Seed derivation and per-shot random streams.
//!
//! Every shot `k` of a sampling run draws from ChaCha8 stream `k` of the
//! run's seed, so the outcome of a shot does not depend on how shots are
//! scheduled across threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `seed` and a path of indices.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(seed), |acc, &k| splitmix64(acc ^ splitmix64(k.wrapping_add(0x5851_f42d_4c95_7f2d))))
}

/// The random stream used by shot `shot` of a run seeded with `seed`.
pub fn shot_stream(seed: u64, shot: u64) -> ShotRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    ShotRng(rng)
}

pub struct ShotRng(ChaCha8Rng);

impl ShotRng {
    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n` for small `n`.
    pub fn below(&mut self, n: u32) -> u32 {
        // Lemire's multiply-shift; bias is below 2^-32 for the n used here.
        ((u64::from(self.0.next_u32()) * u64::from(n)) >> 32) as u32
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        p > 0.0 && self.uniform() < p
    }
}
