use serde::Serialize;

use crate::error::{Error, Result};
use crate::forward::TimeSeries;
use crate::scalar::Real;
use crate::special::{gamma, recip_gamma};

use super::linalg::lstsq;

/// Minimum number of samples in a fit window.
pub const MIN_WINDOW_SAMPLES: usize = 8;
/// Required coefficient of determination of the log-log line.
pub const MIN_R_SQUARED: f64 = 0.99;
/// Largest accepted condition number of the moment design matrix.
pub const MAX_CONDITION: f64 = 1e8;
/// Basis indices with a l within this distance of an integer are dropped.
pub const POLE_GAP: f64 = 1e-3;

/// Closed time interval [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window<T> {
    pub lo: T,
    pub hi: T,
}

/// Log-log estimate of the leading decay u ~ p t^{-a} / Gamma(1 - a).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaFit<T> {
    pub alpha_hat: T,
    pub amplitude_hat: T,
    pub r_squared: T,
    pub window: Window<T>,
    pub samples: usize,
}

fn window_samples<T: Real>(series: &TimeSeries<T>, window: Window<T>) -> Result<(Vec<T>, Vec<T>)> {
    if !(window.hi > window.lo) {
        return Err(Error::BadGrid(format!(
            "empty window [{}, {}]",
            window.lo, window.hi
        )));
    }
    let (t, u) = series.window(window.lo, window.hi);
    if t.len() < MIN_WINDOW_SAMPLES {
        return Err(Error::BadGrid(format!(
            "window [{}, {}] holds {} samples, need {MIN_WINDOW_SAMPLES}",
            window.lo,
            window.hi,
            t.len()
        )));
    }
    let first_sign = u[0] > T::zero();
    if let Some(i) = u.iter().position(|&v| v == T::zero() || (v > T::zero()) != first_sign) {
        return Err(Error::SignChange { t: t[i].as_f64() });
    }
    Ok((t, u))
}

/// Straight-line fit of ln|u| against ln t on the window.
pub fn estimate_alpha_loglog<T: Real>(series: &TimeSeries<T>, window: Window<T>) -> Result<AlphaFit<T>> {
    let (t, u) = window_samples(series, window)?;
    let x: Vec<T> = t.iter().map(|v| v.ln()).collect();
    let y: Vec<T> = u.iter().map(|v| v.abs().ln()).collect();
    let n = T::from_usize_lossy(x.len());
    let mx = x.iter().copied().sum::<T>() / n;
    let my = y.iter().copied().sum::<T>() / n;
    let sxx: T = x.iter().map(|&a| (a - mx) * (a - mx)).sum();
    let sxy: T = x.iter().zip(&y).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    let syy: T = y.iter().map(|&b| (b - my) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy > T::zero() { sxy * sxy / (sxx * syy) } else { T::one() };
    if !(r_squared >= T::lit(MIN_R_SQUARED)) {
        return Err(Error::WindowTooNoisy {
            r_squared: r_squared.as_f64(),
            threshold: MIN_R_SQUARED,
        });
    }
    let alpha_hat = -slope;
    let sign = if u[0] > T::zero() { T::one() } else { -T::one() };
    Ok(AlphaFit {
        alpha_hat,
        amplitude_hat: sign * intercept.exp() * gamma(T::one() - alpha_hat),
        r_squared,
        window,
        samples: t.len(),
    })
}

/// Two-term model p t^{-a} / Gamma(1 - a) + q t^{-2a}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoTermFit<T> {
    pub alpha: T,
    pub p: T,
    pub q: T,
    /// Relative misfit sqrt(sum ((model - u) / u)^2 / n).
    pub residual: T,
    /// |second term| / |first term| at the start of the window.
    pub second_term_share: T,
}

fn two_term_at<T: Real>(t: &[T], u: &[T], alpha: T) -> (T, T, T) {
    let rg = recip_gamma(T::one() - alpha);
    let c0: Vec<T> = t.iter().zip(u).map(|(&s, &v)| rg * s.powf(-alpha) / v.abs()).collect();
    let c1: Vec<T> = t
        .iter()
        .zip(u)
        .map(|(&s, &v)| s.powf(-T::lit(2.0) * alpha) / v.abs())
        .collect();
    let y: Vec<T> = u.iter().map(|&v| v / v.abs()).collect();
    let sol = lstsq(&[c0.clone(), c1.clone()], &y);
    let (p, q) = (sol.x[0], sol.x[1]);
    let ss: T = (0..y.len())
        .map(|i| {
            let r = p * c0[i] + q * c1[i] - y[i];
            r * r
        })
        .sum();
    (p, q, (ss / T::from_usize_lossy(y.len())).sqrt())
}

/// Refines a log-log estimate by fitting the two-term model, the exponent by
/// golden-section search on [a0 - 0.1, a0 + 0.1] and (p, q) by linear least
/// squares for each trial exponent.
pub fn refine_two_term<T: Real>(
    series: &TimeSeries<T>,
    window: Window<T>,
    alpha0: T,
) -> Result<TwoTermFit<T>> {
    let (t, u) = window_samples(series, window)?;
    let eps = T::lit(1e-6);
    let width = T::lit(0.1);
    let (mut lo, mut hi) = if alpha0 < T::one() {
        ((alpha0 - width).max(eps), (alpha0 + width).min(T::one() - eps))
    } else {
        ((alpha0 - width).max(T::one() + eps), (alpha0 + width).min(T::lit(2.0) - eps))
    };
    if !(hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "cannot refine around alpha = {alpha0}"
        )));
    }
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let cost = |a: T| two_term_at(&t, &u, a).2;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (cost(x1), cost(x2));
    while hi - lo > T::lit(1e-10) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = cost(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = cost(x2);
        }
    }
    let alpha = (lo + hi) / T::lit(2.0);
    let (p, q, residual) = two_term_at(&t, &u, alpha);
    let t0 = t[0];
    let first = (p * recip_gamma(T::one() - alpha) * t0.powf(-alpha)).abs();
    let second = (q * t0.powf(-T::lit(2.0) * alpha)).abs();
    Ok(TwoTermFit {
        alpha,
        p,
        q,
        residual,
        second_term_share: second / first,
    })
}

/// Fitted asymptotic moments M_l, l = 1..=L, of
/// u(t) ~ sum_l (-1)^{l+1} M_l t^{-a l} / Gamma(1 - a l).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Moments<T> {
    /// Basis indices l that entered the fit (1-based, ascending).
    pub indices: Vec<usize>,
    pub values: Vec<T>,
    pub condition: T,
}

impl<T: Real> Moments<T> {
    /// M_l if index l was fitted.
    pub fn get(&self, ell: usize) -> Option<T> {
        self.indices.iter().position(|&i| i == ell).map(|j| self.values[j])
    }
}

/// True when 1 - a l sits at (or within [`POLE_GAP`] of) a pole of Gamma.
pub fn is_pole_index<T: Real>(alpha: T, ell: usize) -> bool {
    let al = alpha * T::from_usize_lossy(ell);
    (al - al.round()).abs() < T::lit(POLE_GAP) && al.round() >= T::one()
}

/// Linear least-squares fit of the truncated asymptotic expansion on the
/// window, rows weighted by 1/|u|.
pub fn moment_sequence<T: Real>(
    series: &TimeSeries<T>,
    window: Window<T>,
    alpha_hat: T,
    max_index: usize,
) -> Result<Moments<T>> {
    if max_index == 0 {
        return Err(Error::InvalidParameter("need at least one moment".into()));
    }
    let (t, u) = window_samples(series, window)?;
    let indices: Vec<usize> = (1..=max_index)
        .filter(|&l| !is_pole_index(alpha_hat, l))
        .collect();
    if indices.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "every basis index up to {max_index} is a pole for alpha = {alpha_hat}"
        )));
    }
    let cols: Vec<Vec<T>> = indices
        .iter()
        .map(|&l| {
            let al = alpha_hat * T::from_usize_lossy(l);
            let sign = if l % 2 == 1 { T::one() } else { -T::one() };
            let c = sign * recip_gamma(T::one() - al);
            t.iter().zip(&u).map(|(&s, &v)| c * s.powf(-al) / v.abs()).collect()
        })
        .collect();
    let y: Vec<T> = u.iter().map(|&v| v / v.abs()).collect();
    let sol = lstsq(&cols, &y);
    if !(sol.condition <= T::lit(MAX_CONDITION)) {
        return Err(Error::IllConditioned {
            condition: sol.condition.as_f64(),
            limit: MAX_CONDITION,
        });
    }
    Ok(Moments {
        indices,
        values: sol.x,
        condition: sol.condition,
    })
}
