use serde::Serialize;

use crate::error::{Error, Result};
use crate::forward::{check_order_box, check_orders, ModeExpansion, TimeSeries};
use crate::scalar::Real;
use crate::spectral::Spectrum;

use super::optimize::nelder_mead;

/// Simplex diameter at which the joint fit stops.
pub const SIMPLEX_TOLERANCE: f64 = 1e-6;
pub const MAX_ITERATIONS: usize = 500;
/// Simplex diameter of the restart from the converged vertex.
pub const POLISH_TOLERANCE: f64 = 1e-9;
/// Distance kept from the edges of the admissible box and from alpha = 1.
pub const BOX_MARGIN: f64 = 1e-6;

/// J(a, b) = sum_i (u_model(t_i; a, b) - u_i)^2 for a fixed spectrum, datum
/// and sensor.
#[derive(Debug, Clone)]
pub struct Misfit<'a, T> {
    modes: ModeExpansion<T>,
    series: &'a TimeSeries<T>,
}

impl<'a, T: Real> Misfit<'a, T> {
    pub fn new(series: &'a TimeSeries<T>, spec: &Spectrum<T>, a: &[T], x0: usize) -> Result<Self> {
        Ok(Self {
            modes: ModeExpansion::pointwise(spec, a, x0)?,
            series,
        })
    }

    pub fn eval(&self, alpha: T, beta: T) -> Result<T> {
        check_order_box(alpha, beta)?;
        let model = self.modes.evaluate(alpha, beta, self.series.times())?;
        Ok(model
            .iter()
            .zip(self.series.values())
            .map(|(&m, &u)| (m - u) * (m - u))
            .sum())
    }

    /// sum_i u_i^2, the scale of the misfit.
    pub fn data_energy(&self) -> T {
        self.series.values().iter().map(|&u| u * u).sum()
    }
}

/// Result of [`estimate_joint_lsq`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointFit<T> {
    pub alpha_hat: T,
    pub beta_hat: T,
    pub residual: T,
    pub iterations: usize,
    pub diameter: T,
}

/// Keeps alpha on the side of 1 it started on.
fn alpha_box<T: Real>(alpha0: T) -> (T, T) {
    let m = T::lit(BOX_MARGIN);
    if alpha0 < T::one() {
        (m, T::one() - m)
    } else {
        (T::one() + m, T::lit(2.0) - m)
    }
}

fn in_box<T: Real>(alpha: T, beta: T) -> bool {
    check_orders(alpha, beta).is_ok()
}

/// Minimizes J over (alpha, beta) by Nelder-Mead started at `init`, with
/// trial points projected into the box. alpha stays on the side of 1 where
/// it starts.
pub fn estimate_joint_lsq<T: Real>(misfit: &Misfit<'_, T>, init: (T, T)) -> Result<JointFit<T>> {
    let (alpha0, beta0) = init;
    if !in_box(alpha0, beta0) {
        return Err(Error::StartOutOfBox {
            alpha: alpha0.as_f64(),
            beta: beta0.as_f64(),
        });
    }
    let (alo, ahi) = alpha_box(alpha0);
    let m = T::lit(BOX_MARGIN);
    let lower = [alo, m];
    let upper = [ahi, T::one() - m];
    let objective = |x: &[T]| misfit.eval(x[0], x[1]).unwrap_or(T::infinity());
    let step = T::lit(0.02);
    let min = nelder_mead(
        objective,
        &[alpha0, beta0],
        &[step, step],
        &lower,
        &upper,
        T::lit(SIMPLEX_TOLERANCE),
        MAX_ITERATIONS,
    );
    if !min.converged {
        return Err(Error::MaxIterations {
            iterations: min.iterations,
            diameter: min.diameter.as_f64(),
        });
    }
    // restart from the converged vertex with a small simplex
    let small = T::lit(10.0 * SIMPLEX_TOLERANCE);
    let polish = nelder_mead(
        objective,
        &min.x,
        &[small, small],
        &lower,
        &upper,
        T::lit(POLISH_TOLERANCE),
        MAX_ITERATIONS,
    );
    let best = if polish.value < min.value { &polish } else { &min };
    Ok(JointFit {
        alpha_hat: best.x[0],
        beta_hat: best.x[1],
        residual: best.value,
        iterations: min.iterations + polish.iterations,
        diameter: min.diameter,
    })
}

/// Minimizes J over alpha alone at fixed beta.
pub fn estimate_alpha_lsq<T: Real>(misfit: &Misfit<'_, T>, alpha0: T, beta: T) -> Result<JointFit<T>> {
    if !in_box(alpha0, beta) {
        return Err(Error::StartOutOfBox {
            alpha: alpha0.as_f64(),
            beta: beta.as_f64(),
        });
    }
    let (alo, ahi) = alpha_box(alpha0);
    let min = nelder_mead(
        |x: &[T]| misfit.eval(x[0], beta).unwrap_or(T::infinity()),
        &[alpha0],
        &[T::lit(0.02)],
        &[alo],
        &[ahi],
        T::lit(SIMPLEX_TOLERANCE),
        MAX_ITERATIONS,
    );
    if !min.converged {
        return Err(Error::MaxIterations {
            iterations: min.iterations,
            diameter: min.diameter.as_f64(),
        });
    }
    Ok(JointFit {
        alpha_hat: min.x[0],
        beta_hat: beta,
        residual: min.value,
        iterations: min.iterations,
        diameter: min.diameter,
    })
}

/// Misfit on the product grid; `values[i][j]` belongs to
/// (`alpha_grid[i]`, `beta_grid[j]`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Landscape<T> {
    pub alpha_grid: Vec<T>,
    pub beta_grid: Vec<T>,
    pub values: Vec<Vec<T>>,
}

impl<T: Real> Landscape<T> {
    /// Cells strictly below all of their (up to 8) neighbours.
    pub fn local_minima(&self) -> Vec<(usize, usize)> {
        let (na, nb) = (self.alpha_grid.len(), self.beta_grid.len());
        let mut out = Vec::new();
        for i in 0..na {
            for j in 0..nb {
                let v = self.values[i][j];
                let mut lowest = true;
                for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        if di == 0 && dj == 0 {
                            continue;
                        }
                        let (ii, jj) = (i as i64 + di, j as i64 + dj);
                        if ii < 0 || jj < 0 || ii >= na as i64 || jj >= nb as i64 {
                            continue;
                        }
                        if !(v < self.values[ii as usize][jj as usize]) {
                            lowest = false;
                        }
                    }
                }
                if lowest {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Cell with the smallest misfit.
    pub fn argmin(&self) -> (usize, usize) {
        let mut best = (0, 0);
        for (i, row) in self.values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v < self.values[best.0][best.1] {
                    best = (i, j);
                }
            }
        }
        best
    }

    /// max over alpha of the spread of J along beta, relative to max J.
    pub fn beta_variation(&self) -> T {
        let global = self
            .values
            .iter()
            .flatten()
            .fold(T::zero(), |m, &v| m.max(v.abs()));
        let spread = self
            .values
            .iter()
            .map(|row| {
                let (lo, hi) = row
                    .iter()
                    .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| (lo.min(v), hi.max(v)));
                hi - lo
            })
            .fold(T::zero(), |m, s| m.max(s));
        if global > T::zero() { spread / global } else { T::zero() }
    }
}

/// Exhaustive misfit evaluation on `alpha_grid x beta_grid`.
pub fn residual_landscape<T: Real>(
    misfit: &Misfit<'_, T>,
    alpha_grid: &[T],
    beta_grid: &[T],
) -> Result<Landscape<T>> {
    for &a in alpha_grid {
        for &b in beta_grid {
            check_order_box(a, b)?;
        }
    }
    let values = alpha_grid
        .iter()
        .map(|&a| beta_grid.iter().map(|&b| misfit.eval(a, b)).collect::<Result<Vec<T>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Landscape {
        alpha_grid: alpha_grid.to_vec(),
        beta_grid: beta_grid.to_vec(),
        values,
    })
}

/// True when beta leaves the misfit unchanged to relative tolerance `rel_tol`.
pub fn detect_beta_flat<T: Real>(landscape: &Landscape<T>, rel_tol: T) -> bool {
    landscape.beta_variation() < rel_tol || landscape.values.iter().flatten().all(|&v| v == T::zero())
}

/// Cell-centred grid of `count` points on (lo, hi).
pub fn centered_grid<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    let width = (hi - lo) / T::from_usize_lossy(count);
    (0..count)
        .map(|i| lo + width * (T::from_usize_lossy(i) + T::lit(0.5)))
        .collect()
}
