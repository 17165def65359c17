//! Seeded randomness for property checks: SplitMix64 with integer ranges
//! drawn as `lo + next_u64() % span`.

use rand_core::RngCore;
use rand_xoshiro::SplitMix64;
use rand_core::SeedableRng;

pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish integer in `lo..=hi` (modulo reduction, frozen for reproducibility).
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn permutation(&mut self, n: usize) -> crate::combinatorics::Permutation {
        crate::combinatorics::random_permutation(n, &mut || self.0.next_u64())
    }
}
