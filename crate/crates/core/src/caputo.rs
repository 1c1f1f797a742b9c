//! L1 quadrature for the Caputo derivative of order 0 < a < 1.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::recip_gamma;

/// Caputo derivative of uniformly sampled values, `samples[n] = f(n dt)`.
///
/// ```text
/// D^a f(t_n) ~ dt^{-a} / Gamma(2 - a) * sum_{j=0}^{n-1} b_j (f_{n-j} - f_{n-j-1}),
/// b_j = (j + 1)^{1-a} - j^{1-a}
/// ```
///
/// The value at t_0 = 0 is reported as zero.
pub fn caputo_l1<T: Real>(samples: &[T], alpha: T, dt: T) -> Result<Vec<T>> {
    if samples.len() < 2 {
        return Err(Error::BadGrid(format!(
            "L1 scheme needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(Error::BadGrid(format!("time step must be positive, got {dt}")));
    }
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "L1 scheme requires 0 < alpha < 1, got {alpha}"
        )));
    }
    let n = samples.len();
    let one_minus = T::one() - alpha;
    let weights: Vec<T> = (0..n - 1)
        .map(|j| {
            let j = T::from_usize_lossy(j);
            (j + T::one()).powf(one_minus) - j.powf(one_minus)
        })
        .collect();
    let increments: Vec<T> = samples.windows(2).map(|w| w[1] - w[0]).collect();
    let scale = dt.powf(-alpha) * recip_gamma(T::lit(2.0) - alpha);

    let mut out = Vec::with_capacity(n);
    out.push(T::zero());
    for step in 1..n {
        // increments[step - 1 - j] = f_{step-j} - f_{step-j-1}
        let acc: T = (0..step)
            .map(|j| weights[j] * increments[step - 1 - j])
            .sum();
        out.push(scale * acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn constant_has_zero_derivative() {
        let d = caputo_l1(&[3.0f64; 50], 0.4, 0.1).unwrap();
        assert!(d.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn linear_function_matches_closed_form() {
        let dt = 1e-3f64;
        let alpha = 0.5;
        let samples: Vec<f64> = (0..=1000).map(|i| i as f64 * dt).collect();
        let d = caputo_l1(&samples, alpha, dt).unwrap();
        for (i, v) in d.iter().enumerate().skip(1) {
            let t = i as f64 * dt;
            let exact = t.powf(1.0 - alpha) / gamma(2.0 - alpha);
            assert!((v - exact).abs() <= 1e-3, "t={t}");
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(matches!(caputo_l1(&[1.0f64], 0.5, 0.1), Err(Error::BadGrid(_))));
        assert!(matches!(caputo_l1(&[1.0f64, 2.0], 0.5, 0.0), Err(Error::BadGrid(_))));
        assert!(matches!(caputo_l1(&[1.0f64, 2.0], 0.5, -1.0), Err(Error::BadGrid(_))));
        assert!(caputo_l1(&[1.0f64, 2.0], 1.5, 0.1).is_err());
    }
}
