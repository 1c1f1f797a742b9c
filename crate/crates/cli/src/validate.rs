use std::fmt;

use fracdiff::caputo::caputo_l1;
use fracdiff::forward::{solve_pointwise, ProblemSpec};
use fracdiff::mittag_leffler::{ml_asymptotic_optimal, ml_eval, ml_integral, ml_series, MlParams};
use fracdiff::spectral::{
    balakrishnan_neg_power, discretize, eigendecompose, fractional_apply, resolvent_positivity_check,
    BalakrishnanConfig, OperatorSpec,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost,
    AtLeast,
    Above,
}

impl Bound {
    fn holds(self, measured: f64, limit: f64) -> bool {
        match self {
            Bound::AtMost => measured <= limit,
            Bound::AtLeast => measured >= limit,
            Bound::Above => measured > limit,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
            Bound::Above => ">",
        }
    }
}

/// One embedded invariant: a measured quantity compared against a limit.
pub struct Check {
    pub name: &'static str,
    pub description: &'static str,
    pub bound: Bound,
    pub limit: f64,
    measure: fn() -> CliResult<f64>,
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "ml_exp_reduction",
        description: "E_1(z) = exp(z) on [-5, 0], max relative error",
        bound: Bound::AtMost,
        limit: 1e-13,
        measure: ml_exp_reduction,
    },
    Check {
        name: "ml_series_integral",
        description: "series vs integral route near |z| = 1, max relative gap",
        bound: Bound::AtMost,
        limit: 1e-10,
        measure: ml_series_integral,
    },
    Check {
        name: "ml_integral_asymptotic",
        description: "integral vs asymptotic route at |z| = 60, max relative gap",
        bound: Bound::AtMost,
        limit: 1e-10,
        measure: ml_integral_asymptotic,
    },
    Check {
        name: "spectral_balakrishnan",
        description: "A^-b a spectral vs resolvent quadrature, relative h-norm gap",
        bound: Bound::AtMost,
        limit: 1e-6,
        measure: spectral_balakrishnan,
    },
    Check {
        name: "fractional_positivity",
        description: "min entry of A^-b a / max entry for non-negative a",
        bound: Bound::Above,
        limit: 0.0,
        measure: fractional_positivity,
    },
    Check {
        name: "resolvent_positivity",
        description: "shifts in {0, 1, 10} with a non-positive resolvent entry",
        bound: Bound::AtMost,
        limit: 0.0,
        measure: resolvent_positivity,
    },
    Check {
        name: "caputo_order",
        description: "observed order of the L1 Caputo residual, alpha = 0.5",
        bound: Bound::AtLeast,
        limit: 1.4,
        measure: caputo_order,
    },
];

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub bound: Bound,
    pub limit: f64,
    pub passed: bool,
    pub error: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        match &self.error {
            Some(e) => write!(f, "{tag} {}: {e}", self.name),
            None => write!(
                f,
                "{tag} {}: {:.3e} {} {:.3e}",
                self.name,
                self.measured,
                self.bound.symbol(),
                self.limit
            ),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidateOptions {
    /// Names to run; `None` runs everything, an empty list runs nothing.
    pub select: Option<Vec<String>>,
    /// Replacement limits, for exercising the failure path.
    pub limits: Vec<(String, f64)>,
}

impl ValidateOptions {
    /// Parses a comma-separated selection; the empty string selects nothing.
    pub fn parse_select(s: &str) -> Vec<String> {
        s.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(String::from)
            .collect()
    }

    /// Parses `name=value`.
    pub fn parse_limit(s: &str) -> CliResult<(String, f64)> {
        let bad = || CliError::Argument(format!("expected NAME=VALUE, got `{s}`"));
        let (name, value) = s.split_once('=').ok_or_else(bad)?;
        let value: f64 = value.trim().parse().map_err(|_| bad())?;
        Ok((name.trim().to_string(), value))
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidateReport {
    pub results: Vec<CheckResult>,
}

impl ValidateReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

fn known(name: &str) -> CliResult<()> {
    if CHECKS.iter().any(|c| c.name == name) {
        Ok(())
    } else {
        Err(CliError::Argument(format!("unknown check `{name}`")))
    }
}

pub fn run_validate(opts: &ValidateOptions) -> CliResult<ValidateReport> {
    if let Some(sel) = &opts.select {
        sel.iter().try_for_each(|n| known(n))?;
    }
    opts.limits.iter().try_for_each(|(n, _)| known(n))?;
    let mut report = ValidateReport::default();
    for check in CHECKS {
        if let Some(sel) = &opts.select {
            if !sel.iter().any(|n| n == check.name) {
                continue;
            }
        }
        let limit = opts
            .limits
            .iter()
            .rev()
            .find(|(n, _)| n == check.name)
            .map_or(check.limit, |&(_, v)| v);
        let result = match (check.measure)() {
            Ok(m) => CheckResult {
                name: check.name.into(),
                measured: m,
                bound: check.bound,
                limit,
                passed: check.bound.holds(m, limit),
                error: None,
            },
            Err(e) => CheckResult {
                name: check.name.into(),
                measured: f64::NAN,
                bound: check.bound,
                limit,
                passed: false,
                error: Some(e.to_string()),
            },
        };
        report.results.push(result);
    }
    Ok(report)
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn ml_exp_reduction() -> CliResult<f64> {
    let p = MlParams::with_alpha(1.0)?;
    let mut worst: f64 = 0.0;
    for i in 0..=50 {
        let z = -0.1 * i as f64;
        worst = worst.max(rel(ml_eval(&p, z)?, z.exp()));
    }
    Ok(worst)
}

fn ml_series_integral() -> CliResult<f64> {
    let mut worst: f64 = 0.0;
    for alpha in [0.3, 0.5, 0.7, 1.3, 1.7] {
        let p = MlParams::with_alpha(alpha)?;
        for x in [0.5, 0.9] {
            let s = ml_series(&p, -x, 500)?.value;
            worst = worst.max(rel(ml_integral(&p, x), s));
        }
    }
    Ok(worst)
}

fn ml_integral_asymptotic() -> CliResult<f64> {
    let mut worst: f64 = 0.0;
    for alpha in [0.3, 0.5, 0.7] {
        let p = MlParams::with_alpha(alpha)?;
        let a = ml_asymptotic_optimal(&p, -60.0)?.value;
        worst = worst.max(rel(ml_integral(&p, 60.0), a));
    }
    Ok(worst)
}

fn sin_cubed(op: &OperatorSpec<f64>) -> Vec<f64> {
    op.interpolate(|x| (std::f64::consts::PI * x).sin().powi(3))
}

fn spectral_balakrishnan() -> CliResult<f64> {
    let op = OperatorSpec::unit(100);
    let d = discretize(&op)?;
    let s = eigendecompose(&d)?;
    let a = sin_cubed(&op);
    let mut worst: f64 = 0.0;
    for beta in [0.1, 0.5, 0.9] {
        let x = fractional_apply(&s, -beta, &a)?;
        let y = balakrishnan_neg_power(&d, beta, &a, &BalakrishnanConfig::default())?;
        let diff: Vec<f64> = x.iter().zip(&y).map(|(p, q)| p - q).collect();
        worst = worst.max(s.norm(&diff) / s.norm(&x));
    }
    Ok(worst)
}

fn positive_data(op: &OperatorSpec<f64>) -> Vec<Vec<f64>> {
    vec![
        op.interpolate(|x| x * (1.0 - x)),
        op.interpolate(|x| (-(x - 0.2) * (x - 0.2) / 0.001).exp()),
        (0..op.mesh_points).map(|i| if i == 3 { 1.0 } else { 0.0 }).collect(),
    ]
}

fn fractional_positivity() -> CliResult<f64> {
    let op = OperatorSpec::variable_diffusivity(60);
    let s = eigendecompose(&discretize(&op)?)?;
    let mut worst = f64::INFINITY;
    for a in positive_data(&op) {
        for beta in [0.25, 0.5, 0.75] {
            let w = fractional_apply(&s, -beta, &a)?;
            let max = w.iter().cloned().fold(f64::MIN, f64::max);
            let min = w.iter().cloned().fold(f64::MAX, f64::min);
            worst = worst.min(min / max);
        }
    }
    Ok(worst)
}

fn resolvent_positivity() -> CliResult<f64> {
    let op = OperatorSpec::variable_diffusivity(60);
    let d = discretize(&op)?;
    let mut failures = 0;
    for a in positive_data(&op) {
        for eta in [0.0, 1.0, 10.0] {
            if !resolvent_positivity_check(&d, eta, &a)? {
                failures += 1;
            }
        }
    }
    Ok(failures as f64)
}

fn caputo_residual(dt: f64) -> CliResult<f64> {
    let (alpha, beta) = (0.5, 0.5);
    let op = OperatorSpec::unit(40);
    let s = eigendecompose(&discretize(&op)?)?;
    let phi = s.eigenvector(1).to_vec();
    let x0 = 20;
    let steps = (1.0 / dt).round() as usize;
    let times: Vec<f64> = (1..=steps).map(|i| i as f64 * dt).collect();
    let p = ProblemSpec::new(alpha, beta, phi.clone(), x0, times)?;
    let u = solve_pointwise(&p, &s)?;
    let mut samples = vec![phi[x0]];
    samples.extend_from_slice(u.values());
    let d = caputo_l1(&samples, alpha, dt)?;
    let rate = s.eigenvalue(1).powf(beta);
    Ok((d[steps] + rate * samples[steps]).abs() / phi[x0])
}

fn caputo_order() -> CliResult<f64> {
    let r = [caputo_residual(1e-2)?, caputo_residual(5e-3)?, caputo_residual(2.5e-3)?];
    Ok(r.windows(2).map(|w| (w[0] / w[1]).log2()).fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_selection_runs_nothing() {
        let opts = ValidateOptions {
            select: Some(ValidateOptions::parse_select("")),
            limits: vec![],
        };
        let r = run_validate(&opts).unwrap();
        assert!(r.results.is_empty());
        assert!(r.all_passed());
    }

    #[test]
    fn unknown_names_rejected() {
        let opts = ValidateOptions {
            select: Some(vec!["nope".into()]),
            limits: vec![],
        };
        assert!(run_validate(&opts).is_err());
        assert!(ValidateOptions::parse_limit("x").is_err());
        assert_eq!(
            ValidateOptions::parse_limit("caputo_order=2").unwrap(),
            ("caputo_order".into(), 2.0)
        );
    }
}
