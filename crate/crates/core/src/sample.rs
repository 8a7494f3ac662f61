//! Seeded sampling of exact values. Every randomized check in the crate draws
//! from a [`Sampler`] so that a run is reproducible from its 64-bit seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::ExactScalar;

/// Default bound on numerators and denominators of sampled scalars.
pub const DEFAULT_HEIGHT: i64 = 100;

pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
}

impl Sampler {
    pub fn new(seed: u64, height: i64) -> Self {
        assert!(height >= 1);
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), height }
    }

    pub fn with_seed(seed: u64) -> Self {
        Self::new(seed, DEFAULT_HEIGHT)
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Numerator in `[-h, h]`, denominator in `[1, h]`.
    pub fn rational_parts(&mut self) -> (i64, i64) {
        let h = self.height;
        (self.rng.gen_range(-h..=h), self.rng.gen_range(1..=h))
    }

    pub fn scalar(&mut self) -> ExactScalar {
        let (a, b) = self.rational_parts();
        let (c, d) = self.rational_parts();
        ExactScalar::gaussian(a, b, c, d)
    }

    pub fn nonzero_scalar(&mut self) -> ExactScalar {
        loop {
            let x = self.scalar();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A Gaussian rational sharing the given denominator; used to build
    /// structured samples whose coordinates have a common denominator.
    pub fn scalar_over(&mut self, den: i64) -> ExactScalar {
        let h = self.height;
        let a = self.rng.gen_range(-h..=h);
        let c = self.rng.gen_range(-h..=h);
        ExactScalar::gaussian(a, den, c, den)
    }
}
