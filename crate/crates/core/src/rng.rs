//! Deterministic 64-bit PRNG for verification-point sampling.
//!
//! This is splitmix64 (Steele, Lea, Flood 2014), chosen because its full
//! definition fits in a dozen lines and reproduces bit-exactly in any
//! language: state advances by 0x9E3779B97F4A7C15 and the output mix is
//!
//! ```text
//! z  = state
//! z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//! z ^= z >> 27; z *= 0x94D049BB133111EB
//! z ^= z >> 31
//! ```
//!
//! `next_f64` maps the top 53 bits into [0, 1).

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}
