//! Seeded multiplicative noise.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::forward::TimeSeries;
use crate::scalar::Real;

/// Standard normal deviates from ChaCha8 (a counter-based generator) through
/// the Box-Muller transform; the stream is fixed by the seed on every platform.
#[derive(Debug, Clone)]
pub struct NormalStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl NormalStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform on (0, 1].
    fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let r = (-2.0 * self.uniform().ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * self.uniform();
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}

/// u_i (1 + level xi_i) with xi_i standard normal.
pub fn add_noise<T: Real>(series: &TimeSeries<T>, level: T, seed: u64) -> Result<TimeSeries<T>> {
    if !(level >= T::zero()) || !level.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "noise level must be non-negative, got {level}"
        )));
    }
    let mut normal = NormalStream::new(seed);
    let values = series
        .values()
        .iter()
        .map(|&u| u * (T::one() + level * T::lit(normal.next())))
        .collect();
    TimeSeries::with_noise(series.times().to_vec(), values, level, Some(seed))
}
