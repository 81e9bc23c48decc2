//! Counter-based random numbers: every variate is a pure function of
//! `(key, counter)`, so trials and draws can be evaluated in any order or on
//! any number of threads with bit-identical results.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finaliser (full avalanche on 64 bits).
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`.
#[inline]
pub fn trial_seed(master: u64, index: u64) -> u64 {
    mix64(master ^ mix64(index.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// The `counter`-th 64-bit variate of stream `key`.
#[inline]
pub fn counter_u64(key: u64, counter: u64) -> u64 {
    mix64(mix64(key).wrapping_add(counter.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// Uniform float in `[0, 1)` from the top 53 bits of [`counter_u64`].
#[inline]
pub fn counter_f64(key: u64, counter: u64) -> f64 {
    (counter_u64(key, counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Sequential view over one counter stream; cheap to clone and seek.
#[derive(Clone, Debug)]
pub struct CounterStream {
    key: u64,
    next: u64,
}

impl CounterStream {
    pub fn new(key: u64) -> Self {
        Self { key, next: 0 }
    }

    pub fn position(&self) -> u64 {
        self.next
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = counter_u64(self.key, self.next);
        self.next += 1;
        v
    }

    pub fn next_f64(&mut self) -> f64 {
        let v = counter_f64(self.key, self.next);
        self.next += 1;
        v
    }

    /// Uniform integer in `[0, bound)` (multiply-shift; bias below 2^-32 for
    /// the bounds used here).
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}
