//! A small, fixed pseudo-random generator so that sampling and synthetic
//! graph generation are reproducible across platforms and releases.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood's `splitmix64` update
//! followed by the murmur-style finalizer with constants
//! `0xbf58476d1ce4e5b9` and `0x94d049bb133111eb`). Bounded draws use the
//! 128-bit multiply-shift reduction, and sampling without replacement is a
//! partial Fisher-Yates shuffle. None of this depends on the platform or
//! the standard library's hash randomization.

/// SplitMix64 stream seeded from a `u64`.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound`. `bound` must be nonzero.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Uniform `f64` in `[0, 1)` using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Draws `count` distinct indices from `0..population` (partial
/// Fisher-Yates over an index vector). The result is in draw order.
pub fn sample_without_replacement(
    population: usize,
    count: usize,
    rng: &mut SplitMix64,
) -> Vec<usize> {
    let count = count.min(population);
    let mut indices: Vec<usize> = (0..population).collect();
    for i in 0..count {
        let j = i + rng.next_below((population - i) as u64) as usize;
        indices.swap(i, j);
    }
    indices.truncate(count);
    indices
}
