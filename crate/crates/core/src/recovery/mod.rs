//! Recovery of (alpha, beta) from a single-sensor series: the decay exponent
//! from the large-time power law, beta from the asymptotic moment
//! equations, then a joint least-squares refinement of both.

mod asymptotic;
mod beta;
mod joint;
mod linalg;
mod optimize;

use serde::Serialize;

pub use asymptotic::{
    estimate_alpha_loglog, is_pole_index, moment_sequence, refine_two_term, AlphaFit, Moments,
    TwoTermFit, Window, MAX_CONDITION, MIN_R_SQUARED, MIN_WINDOW_SAMPLES, POLE_GAP,
};
pub use beta::{estimate_beta_moments, BetaEstimate, BETA_SCAN_STEP, MOMENT_TOLERANCE};
pub use joint::{
    centered_grid, detect_beta_flat, estimate_alpha_lsq, estimate_joint_lsq, residual_landscape,
    JointFit, Landscape, Misfit, BOX_MARGIN, MAX_ITERATIONS, POLISH_TOLERANCE, SIMPLEX_TOLERANCE,
};
pub use optimize::{nelder_mead, Minimum};

use crate::error::{Error, Result};
use crate::forward::TimeSeries;
use crate::scalar::Real;
use crate::spectral::{check_identifiability, Spectrum};

/// Accepted range of the second-term share when choosing the fit window.
pub const SHARE_RANGE: (f64, f64) = (0.01, 0.2);
/// beta used where it cannot be estimated.
pub const FALLBACK_BETA: f64 = 0.5;
/// Relative misfit change below which beta counts as having no influence.
pub const FLAT_TOLERANCE: f64 = 1e-12;

/// How the asymptotic fit window is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowPolicy<T> {
    /// Latest decade whose two-term fit has a second-term share inside
    /// [`SHARE_RANGE`], else the trailing decade.
    Auto,
    Fixed(Window<T>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryConfig<T> {
    /// Number of asymptotic moments L.
    pub max_moments: usize,
    pub window: WindowPolicy<T>,
    pub identifiability_tolerance: T,
    /// Run the joint least-squares refinement.
    pub joint: bool,
}

impl<T: Real> Default for RecoveryConfig<T> {
    fn default() -> Self {
        Self {
            max_moments: 3,
            window: WindowPolicy::Auto,
            identifiability_tolerance: T::lit(1e-8),
            joint: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub loglog_alpha: f64,
    pub r_squared: f64,
    pub refined_alpha: Option<f64>,
    pub second_term_share: Option<f64>,
    pub moment_indices: Vec<usize>,
    pub moments: Vec<f64>,
    pub moment_condition: f64,
    pub beta_candidates: Vec<f64>,
    pub k0: Option<usize>,
    pub iterations: usize,
}

/// Output of [`recover`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryResult {
    pub alpha_hat: f64,
    /// `None` when beta is undetermined.
    pub beta_hat: Option<f64>,
    pub amplitude_hat: f64,
    pub residual: f64,
    pub identifiable: bool,
    pub window: [f64; 2],
    pub warnings: Vec<String>,
    pub diagnostics: Diagnostics,
}

/// Picks the fit window according to `policy`, appending a warning when the
/// automatic rule falls back to the trailing decade.
pub fn select_window<T: Real>(
    series: &TimeSeries<T>,
    policy: WindowPolicy<T>,
    warnings: &mut Vec<String>,
) -> Result<Window<T>> {
    if let WindowPolicy::Fixed(w) = policy {
        return Ok(w);
    }
    let times = series.times();
    let (t_min, t_max) = (times[0], times[times.len() - 1]);
    let trailing = Window {
        lo: t_max / T::lit(10.0),
        hi: t_max,
    };
    let quarter = T::lit(10f64.powf(0.25));
    let mut hi = t_max;
    while hi / T::lit(10.0) >= t_min {
        let w = Window {
            lo: hi / T::lit(10.0),
            hi,
        };
        let share = estimate_alpha_loglog(series, w)
            .and_then(|fit| refine_two_term(series, w, fit.alpha_hat))
            .map(|two| two.second_term_share);
        if let Ok(s) = share {
            if s >= T::lit(SHARE_RANGE.0) && s <= T::lit(SHARE_RANGE.1) {
                return Ok(w);
            }
        }
        hi = hi / quarter;
    }
    warnings.push(format!(
        "no decade has a second-term share in [{}, {}]; using the trailing decade [{}, {}]",
        SHARE_RANGE.0, SHARE_RANGE.1, trailing.lo, trailing.hi
    ));
    Ok(trailing)
}

/// Full pipeline: window, alpha from the power law, moments, beta from the
/// leading moment equation, joint refinement.
pub fn recover<T: Real>(
    series: &TimeSeries<T>,
    spec: &Spectrum<T>,
    a: &[T],
    x0: usize,
    config: &RecoveryConfig<T>,
) -> Result<RecoveryResult> {
    let mut warnings = Vec::new();
    let id = check_identifiability(spec, a, x0, config.identifiability_tolerance)?;
    if !id.one_signed {
        warnings.push("initial datum changes sign: outside the hypotheses of the uniqueness result".into());
    }

    let window = select_window(series, config.window, &mut warnings)?;
    let loglog = estimate_alpha_loglog(series, window)?;
    let refined = match refine_two_term(series, window, loglog.alpha_hat) {
        Ok(r) => Some(r),
        Err(e) => {
            warnings.push(format!("two-term refinement skipped: {e}"));
            None
        }
    };
    let alpha1 = refined.map_or(loglog.alpha_hat, |r| r.alpha);

    let mut moments = None;
    for l in (1..=config.max_moments.max(1)).rev() {
        match moment_sequence(series, window, alpha1, l) {
            Ok(m) => {
                moments = Some(m);
                break;
            }
            Err(Error::IllConditioned { condition, .. }) => {
                warnings.push(format!("moment fit with L = {l} ill-conditioned ({condition:.3e}); reducing L"));
            }
            Err(e) => return Err(e),
        }
    }
    let moments = moments.ok_or_else(|| Error::IllConditioned {
        condition: f64::INFINITY,
        limit: MAX_CONDITION,
    })?;
    let amplitude = moments.get(1).unwrap_or(loglog.amplitude_hat);

    let misfit = Misfit::new(series, spec, a, x0)?;
    let alpha_start = clamp_alpha(alpha1);
    let mut identifiable = id.is_identifiable();
    if !identifiable {
        warnings.push(format!(
            "beta undetermined: no mode with a_k != 0 and lambda_k != 1 at the sensor (unit-eigenvalue modes {:?})",
            id.unit_eigenvalue_modes
        ));
    } else {
        let fb = T::lit(FALLBACK_BETA);
        let lo = misfit.eval(alpha_start, T::lit(0.2))?;
        let hi = misfit.eval(alpha_start, T::lit(0.8))?;
        let mid = misfit.eval(alpha_start, fb)?;
        let scale = lo.max(hi).max(mid).max(misfit.data_energy());
        if (lo - mid).abs().max((hi - mid).abs()) <= T::lit(FLAT_TOLERANCE) * scale {
            identifiable = false;
            warnings.push("beta undetermined: the misfit does not depend on beta".into());
        }
    }

    let mut candidates = Vec::new();
    let (fit, beta_hat) = if identifiable {
        let beta0 = match estimate_beta_moments(&moments, spec, a, x0) {
            Ok(b) => {
                candidates = b.candidates.iter().map(|c| c.as_f64()).collect();
                b.beta_hat
            }
            Err(Error::Ambiguous { candidates: c }) => {
                warnings.push(format!("moment equation ambiguous, candidates {c:?}; starting from the first"));
                candidates = c.clone();
                T::lit(c[0])
            }
            Err(e) => {
                warnings.push(format!("moment equation unsolved ({e}); starting from beta = {FALLBACK_BETA}"));
                T::lit(FALLBACK_BETA)
            }
        };
        let beta_start = beta0.max(T::lit(0.01)).min(T::lit(0.99));
        let fit = if config.joint {
            estimate_joint_lsq(&misfit, (alpha_start, beta_start))?
        } else {
            JointFit {
                alpha_hat: alpha_start,
                beta_hat: beta_start,
                residual: misfit.eval(alpha_start, beta_start)?,
                iterations: 0,
                diameter: T::zero(),
            }
        };
        let b = fit.beta_hat.as_f64();
        (fit, Some(b))
    } else {
        let fb = T::lit(FALLBACK_BETA);
        let fit = if config.joint {
            estimate_alpha_lsq(&misfit, alpha_start, fb)?
        } else {
            JointFit {
                alpha_hat: alpha_start,
                beta_hat: fb,
                residual: misfit.eval(alpha_start, fb)?,
                iterations: 0,
                diameter: T::zero(),
            }
        };
        (fit, None)
    };

    Ok(RecoveryResult {
        alpha_hat: fit.alpha_hat.as_f64(),
        beta_hat,
        amplitude_hat: amplitude.as_f64(),
        residual: fit.residual.as_f64(),
        identifiable,
        window: [window.lo.as_f64(), window.hi.as_f64()],
        warnings,
        diagnostics: Diagnostics {
            loglog_alpha: loglog.alpha_hat.as_f64(),
            r_squared: loglog.r_squared.as_f64(),
            refined_alpha: refined.map(|r| r.alpha.as_f64()),
            second_term_share: refined.map(|r| r.second_term_share.as_f64()),
            moment_indices: moments.indices.clone(),
            moments: moments.values.iter().map(|m| m.as_f64()).collect(),
            moment_condition: moments.condition.as_f64(),
            beta_candidates: candidates,
            k0: id.k0,
            iterations: fit.iterations,
        },
    })
}

fn clamp_alpha<T: Real>(alpha: T) -> T {
    let gap = T::lit(0.01);
    let a = alpha.max(gap).min(T::lit(2.0) - gap);
    if (a - T::one()).abs() < gap {
        if a < T::one() { T::one() - gap } else { T::one() + gap }
    } else {
        a
    }
}
