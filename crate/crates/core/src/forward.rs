//! Eigenfunction-expansion solution of the space-time fractional problem
//!
//! ```text
//! D_t^a u = -A^b u,   u(., 0) = a   (and u_t(., 0) = 0 when 1 < a < 2)
//! ```
//!
//! which reads u(x, t) = sum_k E_a(-lambda_k^b t^a) (a, phi_k) phi_k(x).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mittag_leffler::{ml_eval, MlParams};
use crate::scalar::{compensated_sum, Real};
use crate::special::recip_gamma;
use crate::spectral::{fractional_apply, grouped_coefficients, Spectrum};

/// Relative size below which trailing modes are dropped.
pub const TRUNCATION_TOLERANCE: f64 = 1e-12;
/// Constant C in the decay bound |E_a(-x)| <= C / (1 + x).
pub const DECAY_BOUND: f64 = 2.0;

/// Orders, initial datum, sensor node and observation times.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec<T> {
    alpha: T,
    beta: T,
    initial: Vec<T>,
    sensor: usize,
    times: Vec<T>,
}

impl<T: Real> ProblemSpec<T> {
    pub fn new(alpha: T, beta: T, initial: Vec<T>, sensor: usize, times: Vec<T>) -> Result<Self> {
        check_orders(alpha, beta)?;
        if sensor >= initial.len() {
            return Err(Error::InvalidParameter(format!(
                "sensor node {sensor} outside 0..{}",
                initial.len()
            )));
        }
        check_times(&times)?;
        Ok(Self {
            alpha,
            beta,
            initial,
            sensor,
            times,
        })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn initial(&self) -> &[T] {
        &self.initial
    }

    pub fn sensor(&self) -> usize {
        self.sensor
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    /// Same datum, sensor and times with other orders.
    pub fn with_orders(&self, alpha: T, beta: T) -> Result<Self> {
        check_orders(alpha, beta)?;
        Ok(Self {
            alpha,
            beta,
            ..self.clone()
        })
    }
}

/// alpha in (0, 2) away from 1, beta in (0, 1).
pub fn check_orders<T: Real>(alpha: T, beta: T) -> Result<()> {
    if !((alpha - T::one()).abs() > T::lit(1e-12)) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0,2) without 1, got {alpha}"
        )));
    }
    check_order_box(alpha, beta)
}

/// alpha in (0, 2), beta in (0, 1); alpha = 1 allowed.
pub fn check_order_box<T: Real>(alpha: T, beta: T) -> Result<()> {
    if !(alpha > T::zero() && alpha < T::lit(2.0)) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0,2), got {alpha}"
        )));
    }
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "beta must lie in (0,1), got {beta}"
        )));
    }
    Ok(())
}

pub(crate) fn check_times<T: Real>(times: &[T]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::BadGrid("empty time grid".into()));
    }
    if !times.iter().all(|&t| t > T::zero() && t.is_finite()) {
        return Err(Error::BadGrid("times must be positive and finite".into()));
    }
    if let Some(w) = times.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::BadGrid(format!(
            "times must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// `n` geometrically spaced times from `t0` to `t1` inclusive.
pub fn geometric_times<T: Real>(t0: T, t1: T, n: usize) -> Result<Vec<T>> {
    if !(t0 > T::zero() && t1 > t0) || n < 2 {
        return Err(Error::BadGrid(format!(
            "geometric grid needs 0 < t0 < t1 and n >= 2, got {t0}, {t1}, {n}"
        )));
    }
    let (l0, l1) = (t0.ln(), t1.ln());
    let last = T::from_usize_lossy(n - 1);
    let mut out: Vec<T> = (0..n)
        .map(|i| (l0 + (l1 - l0) * T::from_usize_lossy(i) / last).exp())
        .collect();
    out[0] = t0;
    out[n - 1] = t1;
    Ok(out)
}

/// `n` evenly spaced times from `t0` to `t1` inclusive.
pub fn linear_times<T: Real>(t0: T, t1: T, n: usize) -> Result<Vec<T>> {
    if !(t0 > T::zero() && t1 > t0) || n < 2 {
        return Err(Error::BadGrid(format!(
            "linear grid needs 0 < t0 < t1 and n >= 2, got {t0}, {t1}, {n}"
        )));
    }
    let last = T::from_usize_lossy(n - 1);
    Ok((0..n)
        .map(|i| t0 + (t1 - t0) * T::from_usize_lossy(i) / last)
        .collect())
}

/// Sampled observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries<T> {
    times: Vec<T>,
    values: Vec<T>,
    /// Relative standard deviation of injected noise, 0 when clean.
    noise_level: T,
    seed: Option<u64>,
}

impl<T: Real> TimeSeries<T> {
    /// Clean series.
    pub fn new(times: Vec<T>, values: Vec<T>) -> Result<Self> {
        Self::with_noise(times, values, T::zero(), None)
    }

    pub fn with_noise(
        times: Vec<T>,
        values: Vec<T>,
        noise_level: T,
        seed: Option<u64>,
    ) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                got: values.len(),
            });
        }
        check_times(&times)?;
        Ok(Self {
            times,
            values,
            noise_level,
            seed,
        })
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn noise_level(&self) -> T {
        self.noise_level
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Samples with t_lo <= t <= t_hi.
    pub fn window(&self, t_lo: T, t_hi: T) -> (Vec<T>, Vec<T>) {
        self.times
            .iter()
            .zip(&self.values)
            .filter(|(&t, _)| t >= t_lo && t <= t_hi)
            .map(|(&t, &u)| (t, u))
            .unzip()
    }
}

/// Weights w_k and eigenvalues lambda_k of a scalar observation
/// sum_k w_k E_a(-lambda_k^b t^a).
#[derive(Debug, Clone, PartialEq)]
pub struct ModeExpansion<T> {
    weights: Vec<T>,
    eigenvalues: Vec<T>,
}

impl<T: Real> ModeExpansion<T> {
    pub fn new(weights: Vec<T>, eigenvalues: Vec<T>) -> Result<Self> {
        if weights.len() != eigenvalues.len() {
            return Err(Error::DimensionMismatch {
                expected: eigenvalues.len(),
                got: weights.len(),
            });
        }
        if eigenvalues.iter().any(|&l| !(l > T::zero())) {
            return Err(Error::PreconditionViolated(
                "expansion needs a positive spectrum".into(),
            ));
        }
        Ok(Self {
            weights,
            eigenvalues,
        })
    }

    /// Point observation at node `x0`: w_k = (a, phi_k)_h phi_k(x0).
    pub fn pointwise(spec: &Spectrum<T>, a: &[T], x0: usize) -> Result<Self> {
        Self::new(grouped_coefficients(spec, a, x0)?, spec.eigenvalues().to_vec())
    }

    /// Weighted observation (u, rho)_h: w_k = (a, phi_k)_h (rho, phi_k)_h.
    pub fn weighted(spec: &Spectrum<T>, a: &[T], rho: &[T]) -> Result<Self> {
        let ca = spec.coefficients(a)?;
        let cr = spec.coefficients(rho)?;
        let weights = ca.iter().zip(&cr).map(|(&x, &y)| x * y).collect();
        Self::new(weights, spec.eigenvalues().to_vec())
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Number of leading modes K kept at orders (alpha, beta) when the
    /// earliest requested time is `t_min`.
    pub fn truncation(&self, alpha: T, beta: T, t_min: T) -> Result<usize> {
        let params = MlParams::with_alpha(alpha)?;
        let powers = self.powers(beta);
        let ta = t_min.powf(alpha);
        let mut total = T::zero();
        for (&w, &lb) in self.weights.iter().zip(&powers) {
            total += w * ml_eval(&params, -lb * ta)?;
        }
        let bounds: Vec<T> = self
            .weights
            .iter()
            .zip(&powers)
            .map(|(&w, &lb)| w.abs() * T::lit(DECAY_BOUND) / (T::one() + lb * ta))
            .collect();
        truncate_by_bounds(&bounds, total)
    }

    /// Observation at every time, modes summed in ascending order.
    pub fn evaluate(&self, alpha: T, beta: T, times: &[T]) -> Result<Vec<T>> {
        Ok(self.evaluate_with_modes(alpha, beta, times)?.0)
    }

    /// As [`Self::evaluate`], also returning the number of modes used.
    pub fn evaluate_with_modes(&self, alpha: T, beta: T, times: &[T]) -> Result<(Vec<T>, usize)> {
        check_times(times)?;
        let k = self.truncation(alpha, beta, times[0])?;
        let params = MlParams::with_alpha(alpha)?;
        let powers = self.powers(beta);
        let mut out = Vec::with_capacity(times.len());
        for &t in times {
            let ta = t.powf(alpha);
            let mut terms = Vec::with_capacity(k);
            for (&w, &lb) in self.weights[..k].iter().zip(&powers[..k]) {
                terms.push(w * ml_eval(&params, -lb * ta)?);
            }
            out.push(compensated_sum(terms));
        }
        Ok((out, k))
    }

    fn powers(&self, beta: T) -> Vec<T> {
        self.eigenvalues.iter().map(|&l| l.powf(beta)).collect()
    }
}

/// Smallest K with sum_{k > K} bound_k <= tol * |reference|.
fn truncate_by_bounds<T: Real>(bounds: &[T], reference: T) -> Result<usize> {
    let n = bounds.len();
    if !reference.is_finite() || bounds.iter().any(|b| !b.is_finite()) {
        return Err(Error::TruncationFailure {
            tail: f64::INFINITY,
            modes: n,
        });
    }
    let limit = T::lit(TRUNCATION_TOLERANCE) * reference.abs();
    let mut tail = T::zero();
    let mut k = n;
    while k > 0 && tail + bounds[k - 1] <= limit {
        tail += bounds[k - 1];
        k -= 1;
    }
    Ok(k.max(1))
}

/// u(x0, t_i) for every time of the problem.
pub fn solve_pointwise<T: Real>(problem: &ProblemSpec<T>, spec: &Spectrum<T>) -> Result<TimeSeries<T>> {
    let modes = ModeExpansion::pointwise(spec, &problem.initial, problem.sensor)?;
    let values = modes.evaluate(problem.alpha, problem.beta, &problem.times)?;
    TimeSeries::new(problem.times.clone(), values)
}

/// (u(., t), rho)_h for every time of the problem.
pub fn observe_weighted<T: Real>(
    problem: &ProblemSpec<T>,
    spec: &Spectrum<T>,
    rho: &[T],
) -> Result<TimeSeries<T>> {
    let modes = ModeExpansion::weighted(spec, &problem.initial, rho)?;
    let values = modes.evaluate(problem.alpha, problem.beta, &problem.times)?;
    TimeSeries::new(problem.times.clone(), values)
}

/// Nodal vector u(., t).
pub fn solve_field<T: Real>(problem: &ProblemSpec<T>, spec: &Spectrum<T>, t: T) -> Result<Vec<T>> {
    check_times(&[t])?;
    let coeffs = spec.coefficients(&problem.initial)?;
    let params = MlParams::with_alpha(problem.alpha)?;
    let ta = t.powf(problem.alpha);
    let mut damped = Vec::with_capacity(coeffs.len());
    let mut bounds = Vec::with_capacity(coeffs.len());
    for (k, &c) in coeffs.iter().enumerate() {
        let lb = spec.eigenvalues()[k].powf(problem.beta);
        damped.push(c * ml_eval(&params, -lb * ta)?);
        let peak = spec.eigenvectors()[k]
            .iter()
            .fold(T::zero(), |m, &x| m.max(x.abs()));
        bounds.push(c.abs() * peak * T::lit(DECAY_BOUND) / (T::one() + lb * ta));
    }
    let full = spec.synthesize(&damped)?;
    let reference = full.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    let k = truncate_by_bounds(&bounds, reference)?;
    for c in &mut damped[k..] {
        *c = T::zero();
    }
    spec.synthesize(&damped)
}

/// Leading large-time behaviour u(x0, t) ~ p t^{-a} / Gamma(1 - a),
/// p = (A^{-b} a)(x0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeadingLaw<T> {
    pub p: T,
    pub alpha: T,
}

impl<T: Real> LeadingLaw<T> {
    pub fn eval(&self, t: T) -> T {
        self.p * recip_gamma(T::one() - self.alpha) * t.powf(-self.alpha)
    }
}

pub fn asymptotic_leading<T: Real>(problem: &ProblemSpec<T>, spec: &Spectrum<T>) -> Result<LeadingLaw<T>> {
    let w = fractional_apply(spec, -problem.beta, &problem.initial)?;
    Ok(LeadingLaw {
        p: w[problem.sensor],
        alpha: problem.alpha,
    })
}
