//! One-parameter Mittag-Leffler function E_{a,1}(z) on the real axis.
//!
//! Three evaluation routes are combined by [`ml_eval`]:
//!
//! * the defining power series, summed with compensation, for |z| <= [`SERIES_LIMIT`];
//! * a real-line integral representation for the intermediate band;
//! * the algebraic asymptotic expansion for large negative z, used only when
//!   its optimally truncated error estimate meets the accuracy target.
//!
//! The integral route writes, for x > 0 and t = x^{1/a},
//!
//! ```text
//! E_a(-x) = sin(a pi)/(a pi) * int_0^inf exp(-(u x)^{1/a}) / (u^2 + 2 u cos(a pi) + 1) du
//!           + [a > 1] (2/a) exp(t cos(pi/a)) cos(t sin(pi/a))
//! ```
//!
//! and integrates in s = ln u with the trapezoidal rule, whose error decays
//! like exp(-2 pi d / h) for an integrand analytic in the strip |Im s| < d.

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::scalar::{CompensatedSum, Real};
use crate::special::{recip_gamma, sin_pi};

/// Upper end of |z| for which the power series is used.
pub const SERIES_LIMIT: f64 = 1.0;
/// Smallest |z| at which the asymptotic expansion is attempted.
pub const ASYMPTOTIC_FLOOR: f64 = 50.0;
/// Largest positive argument accepted by [`ml_eval`].
pub const POSITIVE_LIMIT: f64 = 1.0;
/// Cap on the number of asymptotic terms.
pub const MAX_ASYMPTOTIC_TERMS: usize = 10;
/// Term budget used by [`ml_eval`] for the series route.
pub const DEFAULT_SERIES_TERMS: usize = 500;

/// Order and accuracy target of a Mittag-Leffler evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams<T> {
    alpha: T,
    accuracy_target: T,
}

impl<T: Real> MlParams<T> {
    pub fn new(alpha: T, accuracy_target: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::lit(2.0)) {
            return Err(Error::InvalidParameter(format!(
                "Mittag-Leffler order must lie in (0, 2], got {alpha}"
            )));
        }
        if !(accuracy_target > T::zero() && accuracy_target < T::one()) {
            return Err(Error::InvalidParameter(format!(
                "accuracy target must lie in (0, 1), got {accuracy_target}"
            )));
        }
        Ok(Self {
            alpha,
            accuracy_target,
        })
    }

    /// Parameters with [`Real::default_accuracy`].
    pub fn with_alpha(alpha: T) -> Result<Self> {
        Self::new(alpha, T::default_accuracy())
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn accuracy_target(&self) -> T {
        self.accuracy_target
    }
}

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Closed form (a = 1, a = 2, or z = 0).
    Closed,
    Series,
    Integral,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval<T> {
    pub value: T,
    pub terms: usize,
}

/// Partial sum of sum_k z^k / Gamma(a k + 1).
///
/// Stops once a term, after the terms have started to shrink, falls below
/// `accuracy_target * |sum|`. Reports the number of terms consumed.
pub fn ml_series<T: Real>(params: &MlParams<T>, z: T, max_terms: usize) -> Result<SeriesEval<T>> {
    if z == T::zero() {
        return Ok(SeriesEval {
            value: T::one(),
            terms: 1,
        });
    }
    let alpha = params.alpha;
    let mut acc = CompensatedSum::new();
    let mut power = T::one();
    let mut prev_mag = T::infinity();
    let mut last = T::zero();
    for k in 0..max_terms {
        let term = power * recip_gamma(alpha * T::from_usize_lossy(k) + T::one());
        if !term.is_finite() {
            break;
        }
        acc.add(term);
        let mag = term.abs();
        last = mag;
        if k > 0 && mag < prev_mag && mag <= params.accuracy_target * acc.value().abs() {
            return Ok(SeriesEval {
                value: acc.value(),
                terms: k + 1,
            });
        }
        prev_mag = mag;
        power *= z;
    }
    Err(Error::NonConvergence {
        max_terms,
        last_term: last.as_f64(),
    })
}

/// Coefficients (-1)^{l+1} / Gamma(1 - a l), l = 1..=N, of the large-argument
/// expansion E_a(-x) ~ sum_l c_l x^{-l}.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion<T> {
    alpha: T,
    coefficients: Vec<T>,
}

/// (-1)^{l+1} / Gamma(1 - a l); exactly zero when 1 - a l is a pole of Gamma.
pub fn asymptotic_coefficient<T: Real>(alpha: T, ell: usize) -> T {
    let sign = if ell % 2 == 1 { T::one() } else { -T::one() };
    sign * recip_gamma(T::one() - alpha * T::from_usize_lossy(ell))
}

impl<T: Real> AsymptoticExpansion<T> {
    pub fn new(alpha: T, num_terms: usize) -> Result<Self> {
        if num_terms == 0 {
            return Err(Error::InvalidParameter(
                "asymptotic expansion needs at least one term".into(),
            ));
        }
        let coefficients = (1..=num_terms)
            .map(|ell| asymptotic_coefficient(alpha, ell))
            .collect();
        Ok(Self {
            alpha,
            coefficients,
        })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn num_terms(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficient for index `ell` (1-based).
    pub fn coefficient(&self, ell: usize) -> T {
        self.coefficients[ell - 1]
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// sum_{l=1}^N c_l x^{-l} for x > 0.
    pub fn evaluate(&self, x: T) -> T {
        let inv = x.recip();
        let mut power = T::one();
        let mut acc = CompensatedSum::new();
        for &c in &self.coefficients {
            power *= inv;
            acc.add(c * power);
        }
        acc.value()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEval<T> {
    pub value: T,
    pub terms: usize,
    /// Magnitude of the first non-vanishing omitted term, plus for a > 1 the
    /// size of the exponentially damped oscillation the expansion ignores.
    pub error_estimate: T,
}

/// Magnitude of the exponentially small part the algebraic expansion omits.
fn exponential_remainder<T: Real>(alpha: T, x: T) -> T {
    if alpha <= T::one() {
        return T::zero();
    }
    let t = x.powf(alpha.recip());
    T::lit(2.0) / alpha * (t * (T::PI() / alpha).cos()).exp()
}

/// First non-vanishing term with index > `after`, as a magnitude.
fn next_nonzero_term<T: Real>(alpha: T, x: T, after: usize) -> T {
    // poles hit at most every other index for a in (0,2), so a few extra
    // indices always reach a non-zero coefficient
    for ell in after + 1..=after + 4 {
        let c = asymptotic_coefficient(alpha, ell);
        if c != T::zero() {
            return c.abs() * x.powi(-(ell as i32));
        }
    }
    T::zero()
}

/// Truncated asymptotic expansion of E_a(z) for z < 0 with `num_terms` terms.
///
/// Fails with [`Error::Regime`] when the omitted-term estimate, relative to the
/// returned value, exceeds the accuracy target.
pub fn ml_asymptotic<T: Real>(
    params: &MlParams<T>,
    z: T,
    num_terms: usize,
) -> Result<AsymptoticEval<T>> {
    if !(z < T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "asymptotic expansion requires z < 0, got {z}"
        )));
    }
    let x = -z;
    let expansion = AsymptoticExpansion::new(params.alpha, num_terms)?;
    let value = expansion.evaluate(x);
    let error_estimate =
        next_nonzero_term(params.alpha, x, num_terms) + exponential_remainder(params.alpha, x);
    check_regime(params, value, error_estimate)?;
    Ok(AsymptoticEval {
        value,
        terms: num_terms,
        error_estimate,
    })
}

/// Asymptotic expansion truncated before the terms start growing, with at
/// most [`MAX_ASYMPTOTIC_TERMS`] terms.
pub fn ml_asymptotic_optimal<T: Real>(params: &MlParams<T>, z: T) -> Result<AsymptoticEval<T>> {
    if !(z < T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "asymptotic expansion requires z < 0, got {z}"
        )));
    }
    let x = -z;
    let alpha = params.alpha;
    let inv = x.recip();
    let mut power = T::one();
    let mut acc = CompensatedSum::new();
    let mut prev_mag = T::infinity();
    let mut used = 0;
    for ell in 1..=MAX_ASYMPTOTIC_TERMS {
        power *= inv;
        let c = asymptotic_coefficient(alpha, ell);
        if c == T::zero() {
            used = ell;
            continue;
        }
        let term = c * power;
        if term.abs() >= prev_mag {
            break;
        }
        acc.add(term);
        prev_mag = term.abs();
        used = ell;
    }
    let value = acc.value();
    let error_estimate = next_nonzero_term(alpha, x, used) + exponential_remainder(alpha, x);
    check_regime(params, value, error_estimate)?;
    Ok(AsymptoticEval {
        value,
        terms: used,
        error_estimate,
    })
}

fn check_regime<T: Real>(params: &MlParams<T>, value: T, estimate: T) -> Result<()> {
    if estimate > params.accuracy_target * value.abs() {
        return Err(Error::Regime {
            estimate: (estimate / value.abs()).as_f64(),
            target: params.accuracy_target.as_f64(),
        });
    }
    Ok(())
}

/// Below this pole distance the trapezoidal rule is replaced by graded panels.
const NEAR_ONE_GAP: f64 = 0.1;

/// Panel breaks on [lo, hi]: width 1/2 away from the origin, geometric
/// toward it down to `gap`.
fn graded_breaks<T: Real>(lo: T, hi: T, gap: T) -> Vec<T> {
    let half = T::lit(0.5);
    let mut pts = vec![lo, hi];
    let mut s = lo;
    while s < hi {
        if s.abs() >= T::one() {
            pts.push(s);
        }
        s += half;
    }
    let mut r = gap;
    while r < T::one() {
        pts.push(r);
        pts.push(-r);
        r += r;
    }
    pts.push(T::zero());
    pts.push(T::one());
    pts.push(-T::one());
    let mut pts: Vec<T> = pts.into_iter().filter(|&p| p >= lo && p <= hi).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite breaks"));
    pts.dedup();
    pts
}

/// E_a(-x) for x > 0 from the real-line integral representation.
pub fn ml_integral<T: Real>(params: &MlParams<T>, x: T) -> T {
    let alpha = params.alpha;
    let pi = T::PI();
    let one = T::one();
    let sin_ap = sin_pi(alpha);
    // 1 + cos(a pi), kept accurate for a near 1
    let one_plus_cos = T::lit(2.0) * sin_pi((one - alpha) * T::lit(0.5)).powi(2);
    let inv_alpha = alpha.recip();

    // half-width of the strip of analyticity in s = ln u
    let pole_gap = pi * (one - alpha).abs();
    let growth_gap = alpha * pi * T::lit(0.5);
    let strip = T::lit(0.8) * pole_gap.min(growth_gap);
    let digits = -(params.accuracy_target * T::lit(1e-4)).ln();

    let ln_x = x.ln();
    let cutoff = digits + T::lit(5.0);
    let s_lo = -ln_x.max(T::zero()) - cutoff;
    let s_hi = alpha * cutoff.ln() - ln_x;
    let integrand = |s: T| {
        let u = s.exp();
        let um1 = s.exp_m1();
        let decay = ((u * x).powf(inv_alpha)).exp();
        // u^2 + 2u cos(a pi) + 1 = (u - 1)^2 + 2u (1 + cos(a pi))
        u / ((um1 * um1 + T::lit(2.0) * u * one_plus_cos) * decay)
    };

    let integral = if pole_gap < T::lit(NEAR_ONE_GAP) {
        // poles at Im s = +-pole_gap close to s = 0: grade panels toward them
        let breaks = graded_breaks(s_lo, s_hi, pole_gap);
        GaussLegendre::new(20).integrate_panels(&breaks, integrand)
    } else {
        let h = (T::TAU() * strip / digits).min(T::lit(0.25));
        let steps = ((s_hi - s_lo) / h).ceil().to_usize().unwrap_or(0).max(1);
        let mut acc = CompensatedSum::new();
        for i in 0..=steps {
            let w = if i == 0 || i == steps { T::lit(0.5) } else { one };
            acc.add(w * integrand(s_lo + h * T::from_usize_lossy(i)));
        }
        acc.value() * h
    };
    let mut value = integral * sin_ap / (alpha * pi);
    if alpha > one {
        let t = x.powf(inv_alpha);
        let angle = pi * inv_alpha;
        value += T::lit(2.0) * inv_alpha * (t * angle.cos()).exp() * (t * angle.sin()).cos();
    }
    value
}

/// E_a(z), dispatching between the closed forms and the three numerical routes.
///
/// Accurate to the accuracy target on the negative axis; positive z is
/// accepted only up to [`POSITIVE_LIMIT`].
pub fn ml_eval<T: Real>(params: &MlParams<T>, z: T) -> Result<T> {
    ml_eval_with_regime(params, z).map(|(v, _)| v)
}

/// As [`ml_eval`], also reporting the route taken.
pub fn ml_eval_with_regime<T: Real>(params: &MlParams<T>, z: T) -> Result<(T, Regime)> {
    if !z.is_finite() {
        return Err(Error::UnsupportedRegime { z: z.as_f64() });
    }
    let alpha = params.alpha;
    if z == T::zero() {
        return Ok((T::one(), Regime::Closed));
    }
    if z > T::zero() {
        if z > T::lit(POSITIVE_LIMIT) {
            return Err(Error::UnsupportedRegime { z: z.as_f64() });
        }
        if alpha == T::one() {
            return Ok((z.exp(), Regime::Closed));
        }
        if alpha == T::lit(2.0) {
            return Ok((z.sqrt().cosh(), Regime::Closed));
        }
        let s = ml_series(params, z, DEFAULT_SERIES_TERMS)?;
        return Ok((s.value, Regime::Series));
    }
    if alpha == T::one() {
        return Ok((z.exp(), Regime::Closed));
    }
    let x = -z;
    if alpha == T::lit(2.0) {
        return Ok((x.sqrt().cos(), Regime::Closed));
    }
    if x <= T::lit(SERIES_LIMIT) {
        if let Ok(s) = ml_series(params, z, DEFAULT_SERIES_TERMS) {
            return Ok((s.value, Regime::Series));
        }
    }
    if x >= T::lit(ASYMPTOTIC_FLOOR) {
        let strict = MlParams {
            alpha,
            accuracy_target: params.accuracy_target * T::lit(0.1),
        };
        if let Ok(a) = ml_asymptotic_optimal(&strict, z) {
            return Ok((a.value, Regime::Asymptotic));
        }
    }
    Ok((ml_integral(params, x), Regime::Integral))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(alpha: f64) -> MlParams<f64> {
        MlParams::with_alpha(alpha).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn params_validation() {
        assert!(MlParams::new(0.0, 1e-10).is_err());
        assert!(MlParams::new(2.5, 1e-10).is_err());
        assert!(MlParams::new(0.5, 0.0).is_err());
        assert!(MlParams::new(0.5, 1.0).is_err());
        assert!(MlParams::new(2.0, 1e-10).is_ok());
    }

    #[test]
    fn series_examples() {
        let s = ml_series(&p(0.5), 0.0, 10).unwrap();
        assert_eq!(s.value, 1.0);
        let e = ml_series(&p(1.0), -1.0, 100).unwrap();
        assert!(rel(e.value, (-1.0f64).exp()) < 1e-14);
        assert!(e.terms > 10);
    }

    #[test]
    fn series_reports_nonconvergence() {
        let err = ml_series(&p(0.5), -30.0, 20).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { max_terms: 20, .. }));
    }

    #[test]
    fn asymptotic_single_term() {
        let params = MlParams::new(0.5f64, 1e-4).unwrap();
        let a = ml_asymptotic(&params, -100.0, 1).unwrap();
        assert!((a.value - 0.005_641_895_835).abs() < 1e-12);
        assert_eq!(a.terms, 1);
        // l = 2 is a pole for a = 1/2, so the estimate comes from l = 3
        let expected = (asymptotic_coefficient(0.5f64, 3) * 1e-6).abs();
        assert!((a.error_estimate - expected).abs() < 1e-20);
    }

    #[test]
    fn asymptotic_outside_regime() {
        let err = ml_asymptotic(&p(1.5), -1.0, 1).unwrap_err();
        assert!(matches!(err, Error::Regime { .. }));
    }

    #[test]
    fn asymptotic_pole_coefficients_vanish() {
        let e = AsymptoticExpansion::new(0.5, 4).unwrap();
        assert_eq!(e.coefficient(2), 0.0);
        assert_eq!(e.coefficient(4), 0.0);
        assert!(e.coefficient(1) > 0.0);
        let e = AsymptoticExpansion::new(1.5, 4).unwrap();
        assert_eq!(e.coefficient(2), 0.0);
        assert!(AsymptoticExpansion::new(0.5, 0).is_err());
    }

    #[test]
    fn eval_closed_forms() {
        assert!(rel(ml_eval(&p(2.0), -4.0).unwrap(), 2.0f64.cos()) < 1e-15);
        assert!(rel(ml_eval(&p(1.0), -5.0).unwrap(), (-5.0f64).exp()) < 1e-15);
        for alpha in [0.1, 0.5, 1.0, 1.5, 2.0] {
            assert_eq!(ml_eval(&p(alpha), 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn eval_rejects_large_positive() {
        assert!(matches!(
            ml_eval(&p(0.5), 5.0),
            Err(Error::UnsupportedRegime { .. })
        ));
        assert!(ml_eval(&p(0.5), 0.5).unwrap() > 1.0);
    }

    #[test]
    fn eval_regimes_selected() {
        let params = p(0.5);
        assert_eq!(ml_eval_with_regime(&params, -0.5).unwrap().1, Regime::Series);
        assert_eq!(ml_eval_with_regime(&params, -5.0).unwrap().1, Regime::Integral);
        assert_eq!(
            ml_eval_with_regime(&params, -1e5).unwrap().1,
            Regime::Asymptotic
        );
    }

    #[test]
    fn integral_reduces_to_exp_and_cos() {
        // a close to 1 and 2 exercise the narrow-strip and pole-term paths
        let near_one = MlParams::new(0.999_999_999_9, 1e-12).unwrap();
        let v = ml_integral(&near_one, 3.0);
        assert!(rel(v, (-3.0f64).exp()) < 1e-7, "{v}");
        let near_two = MlParams::new(1.999_999, 1e-12).unwrap();
        let v = ml_integral(&near_two, 9.0);
        assert!((v - 3.0f64.cos()).abs() < 1e-4, "{v}");
    }

    #[test]
    fn f32_evaluation() {
        let params = MlParams::<f32>::with_alpha(0.5).unwrap();
        let v = ml_eval(&params, -10.0f32).unwrap();
        assert!((v - 0.056_140_99).abs() < 1e-5);
    }
}
