use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::{grouped_coefficients, Spectrum};

use super::asymptotic::Moments;

/// Scan step of the beta grid on (0, 1).
pub const BETA_SCAN_STEP: f64 = 1e-3;
/// Relative tolerance for matching moments and separating candidates.
pub const MOMENT_TOLERANCE: f64 = 1e-6;

/// Roots of M_1 = sum_k a_k lambda_k^{-b}, ranked by how well they also
/// reproduce the higher moments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaEstimate<T> {
    pub beta_hat: T,
    /// Every root found, best first.
    pub candidates: Vec<T>,
    /// Multi-moment mismatch of each candidate, same order.
    pub scores: Vec<T>,
}

/// m(b) = sum_k a_k lambda_k^{-b l}.
pub(crate) fn model_moment<T: Real>(coeffs: &[T], eigenvalues: &[T], beta: T, ell: usize) -> T {
    let e = -beta * T::from_usize_lossy(ell);
    coeffs
        .iter()
        .zip(eigenvalues)
        .map(|(&a, &l)| a * l.powf(e))
        .sum()
}

/// Solves the leading moment equation for beta by a grid scan on (0, 1)
/// followed by bisection of every bracketed sign change.
pub fn estimate_beta_moments<T: Real>(
    moments: &Moments<T>,
    spec: &Spectrum<T>,
    a: &[T],
    x0: usize,
) -> Result<BetaEstimate<T>> {
    let m1 = moments
        .get(1)
        .ok_or_else(|| Error::InvalidParameter("leading moment M_1 missing".into()))?;
    let coeffs = grouped_coefficients(spec, a, x0)?;
    let lambdas = spec.eigenvalues();
    let f = |b: T| model_moment(&coeffs, lambdas, b, 1) - m1;
    let tol = T::lit(MOMENT_TOLERANCE) * m1.abs();

    let steps = (1.0 / BETA_SCAN_STEP).round() as usize;
    let grid: Vec<T> = (1..steps)
        .map(|i| T::from_usize_lossy(i) * T::lit(BETA_SCAN_STEP))
        .collect();
    let values: Vec<T> = grid.iter().map(|&b| f(b)).collect();
    let (vmin, vmax) = values
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let best_misfit = values.iter().fold(T::infinity(), |m, &v| m.min(v.abs()));
    if vmax - vmin <= tol {
        // flat: the moment does not depend on beta
        return Err(Error::NoRoot {
            best_misfit: best_misfit.as_f64(),
        });
    }

    let mut roots = Vec::new();
    for i in 0..grid.len() {
        if values[i] == T::zero() {
            roots.push(grid[i]);
            continue;
        }
        if i + 1 < grid.len() && values[i + 1] != T::zero() && (values[i] > T::zero()) != (values[i + 1] > T::zero()) {
            roots.push(bisect(&f, grid[i], grid[i + 1], values[i]));
        }
    }
    if roots.is_empty() {
        return Err(Error::NoRoot {
            best_misfit: best_misfit.as_f64(),
        });
    }

    let scores: Vec<T> = roots
        .iter()
        .map(|&b| {
            moments
                .indices
                .iter()
                .zip(&moments.values)
                .filter(|(&l, _)| l > 1)
                .map(|(&l, &m)| {
                    let r = (model_moment(&coeffs, lambdas, b, l) - m) / m.abs().max(T::min_positive_value());
                    r * r
                })
                .sum::<T>()
                .sqrt()
        })
        .collect();
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| scores[i].partial_cmp(&scores[j]).unwrap_or(std::cmp::Ordering::Equal));
    let candidates: Vec<T> = order.iter().map(|&i| roots[i]).collect();
    let scores: Vec<T> = order.iter().map(|&i| scores[i]).collect();
    if candidates.len() > 1 && scores[1] - scores[0] <= T::lit(MOMENT_TOLERANCE) {
        return Err(Error::Ambiguous {
            candidates: candidates.iter().map(|c| c.as_f64()).collect(),
        });
    }
    Ok(BetaEstimate {
        beta_hat: candidates[0],
        candidates,
        scores,
    })
}

fn bisect<T: Real, F: Fn(T) -> T>(f: &F, mut lo: T, mut hi: T, mut flo: T) -> T {
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm > T::zero()) == (flo > T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / T::lit(2.0)
}
