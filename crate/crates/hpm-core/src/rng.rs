//! Deterministic, splittable random streams for the Monte Carlo engine.
//!
//! Each trial draws from its own `SplitMix64` stream derived from the
//! campaign seed and the trial index, so a campaign's trial sequence is
//! identical whether trials run serially or fanned out across threads.
//! The finalizer is the standard splitmix64 mix; the per-trial keying
//! applies it twice to decorrelate consecutive indices.

#[cfg_attr(test, allow(unused_imports))]
use crate::math::FloatExt;
use crate::{Error, Result};

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
const REJECTION_LIMIT: u32 = 1000;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// splitmix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream for one trial of a campaign, keyed on
    /// (seed, trial_index).
    pub fn for_trial(seed: u64, trial_index: u64) -> Self {
        let keyed = mix64(seed ^ mix64(trial_index.wrapping_mul(GOLDEN_GAMMA) ^ GOLDEN_GAMMA));
        SplitMix64 { state: keyed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in [0, 1), 53 mantissa bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [low, high); returns `low` when the bounds collapse.
    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.next_f64()
    }

    /// Normal draw via Box-Muller; consumes exactly two raw values.
    pub fn normal(&mut self, mean: f64, sigma: f64) -> f64 {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        let radius = (-2.0 * (1.0 - u1).ln()).sqrt();
        mean + sigma * radius * (2.0 * core::f64::consts::PI * u2).cos()
    }

    /// Normal draw rejected until it falls strictly inside (min, max).
    ///
    /// Errors after 1000 consecutive rejections, which indicates a spec
    /// whose bounds carry essentially no probability mass.
    pub fn truncated_normal(
        &mut self,
        parameter: &'static str,
        mean: f64,
        sigma: f64,
        min: f64,
        max: f64,
    ) -> Result<f64> {
        for _ in 0..REJECTION_LIMIT {
            let x = self.normal(mean, sigma);
            if x > min && x < max {
                return Ok(x);
            }
        }
        Err(Error::SamplingRejectionLimit { parameter })
    }

    /// Rayleigh draw with scale `sigma`; consumes one raw value.
    pub fn rayleigh(&mut self, sigma: f64) -> f64 {
        let u = self.next_f64();
        sigma * (-2.0 * (1.0 - u).ln()).sqrt()
    }
}
