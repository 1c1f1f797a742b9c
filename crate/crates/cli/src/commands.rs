use fracdiff::forward::{asymptotic_leading, ModeExpansion, ProblemSpec};
use fracdiff::mittag_leffler::{ml_eval, MlParams};
use fracdiff::noise::add_noise;
use fracdiff::recovery::{
    centered_grid, detect_beta_flat, recover, residual_landscape, Landscape, Misfit,
    RecoveryResult,
};
use fracdiff::spectral::{check_identifiability, discretize, eigendecompose, Identifiability, OperatorSpec};
use fracdiff::{Spectrum64, TimeSeries64};
use serde::Serialize;

use crate::config::{RunConfig, WeightPreset};
use crate::error::{CliError, CliResult};
use crate::output::{csv_table, fmt17, series_csv};

/// Operator, spectrum, datum and sensor resolved from a config.
pub struct Experiment {
    pub operator: OperatorSpec<f64>,
    pub spectrum: Spectrum64,
    pub initial: Vec<f64>,
    pub sensor: usize,
    pub problem: ProblemSpec<f64>,
}

impl Experiment {
    pub fn new(cfg: &RunConfig) -> CliResult<Self> {
        cfg.validate()?;
        let operator = cfg.operator.spec();
        let spectrum = eigendecompose(&discretize(&operator)?)?;
        let initial = cfg.problem.initial.nodal(&operator, &spectrum)?;
        let sensor = cfg.observation.node(&operator)?;
        let problem = ProblemSpec::new(
            cfg.problem.alpha,
            cfg.problem.beta,
            initial.clone(),
            sensor,
            cfg.problem.times.times()?,
        )?;
        Ok(Self {
            operator,
            spectrum,
            initial,
            sensor,
            problem,
        })
    }

    fn modes(&self, weight: Option<WeightPreset>) -> CliResult<ModeExpansion<f64>> {
        Ok(match weight {
            None => ModeExpansion::pointwise(&self.spectrum, &self.initial, self.sensor)?,
            Some(WeightPreset::Ones) => {
                let rho = vec![1.0; self.operator.mesh_points];
                ModeExpansion::weighted(&self.spectrum, &self.initial, &rho)?
            }
            Some(WeightPreset::FirstEigenvector) => {
                let rho = self.spectrum.eigenvector(1).to_vec();
                ModeExpansion::weighted(&self.spectrum, &self.initial, &rho)?
            }
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SensorMeta {
    pub node: usize,
    pub x: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumMeta {
    pub modes: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub leading: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeMeta {
    pub k: usize,
    pub lambda: f64,
    pub a_k: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NoiseMeta {
    pub level: f64,
    pub seed: u64,
}

/// Contents of `meta.json`.
#[derive(Debug, Clone, Serialize)]
pub struct SolveMeta {
    pub version: u32,
    pub alpha: f64,
    pub beta: f64,
    pub operator: OperatorSpec<f64>,
    pub sensor: SensorMeta,
    pub observation: String,
    pub spectrum: SpectrumMeta,
    pub truncation_modes: usize,
    pub coefficients: Vec<ModeMeta>,
    pub identifiability: Identifiability,
    pub leading_amplitude: f64,
    pub noise: Option<NoiseMeta>,
}

pub struct SolveOutput {
    pub clean: TimeSeries64,
    pub noisy: Option<TimeSeries64>,
    pub meta: SolveMeta,
}

impl SolveOutput {
    /// Series handed to recovery: noisy if present.
    pub fn observed(&self) -> &TimeSeries64 {
        self.noisy.as_ref().unwrap_or(&self.clean)
    }

    pub fn csv(&self) -> CliResult<String> {
        series_csv(&self.clean, self.noisy.as_ref())
    }
}

pub fn run_solve(cfg: &RunConfig, seed: Option<u64>) -> CliResult<SolveOutput> {
    let exp = Experiment::new(cfg)?;
    let p = &exp.problem;
    let modes = exp.modes(cfg.observation.weight)?;
    let (values, k) = modes.evaluate_with_modes(p.alpha(), p.beta(), p.times())?;
    let clean = TimeSeries64::new(p.times().to_vec(), values)?;
    let noise_seed = seed.unwrap_or(cfg.noise.seed);
    let noisy = if cfg.noise.level > 0.0 {
        Some(add_noise(&clean, cfg.noise.level, noise_seed)?)
    } else {
        None
    };
    let ev = exp.spectrum.eigenvalues();
    let meta = SolveMeta {
        version: cfg.version,
        alpha: p.alpha(),
        beta: p.beta(),
        operator: exp.operator,
        sensor: SensorMeta {
            node: exp.sensor,
            x: exp.operator.node(exp.sensor),
        },
        observation: match cfg.observation.weight {
            None => "point".into(),
            Some(WeightPreset::Ones) => "weighted_ones".into(),
            Some(WeightPreset::FirstEigenvector) => "weighted_first_eigenvector".into(),
        },
        spectrum: SpectrumMeta {
            modes: ev.len(),
            lambda_min: ev[0],
            lambda_max: ev[ev.len() - 1],
            leading: ev.iter().take(5).copied().collect(),
        },
        truncation_modes: k,
        coefficients: (0..k)
            .map(|i| ModeMeta {
                k: i + 1,
                lambda: ev[i],
                a_k: modes.weights()[i],
            })
            .collect(),
        identifiability: check_identifiability(
            &exp.spectrum,
            &exp.initial,
            exp.sensor,
            cfg.recovery.identifiability_tolerance,
        )?,
        leading_amplitude: asymptotic_leading(p, &exp.spectrum)?.p,
        noise: noisy.as_ref().map(|_| NoiseMeta {
            level: cfg.noise.level,
            seed: noise_seed,
        }),
    };
    Ok(SolveOutput { clean, noisy, meta })
}

fn point_observation(cfg: &RunConfig) -> CliResult<()> {
    if cfg.observation.weight.is_some() {
        return Err(CliError::Config(
            "recovery works on point observations; remove observation.weight".into(),
        ));
    }
    Ok(())
}

pub fn run_recover(cfg: &RunConfig, series: &TimeSeries64) -> CliResult<RecoveryResult> {
    point_observation(cfg)?;
    let exp = Experiment::new(cfg)?;
    Ok(recover(
        series,
        &exp.spectrum,
        &exp.initial,
        exp.sensor,
        &cfg.recovery.core(),
    )?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub alpha: f64,
    pub beta: f64,
    pub misfit: f64,
}

/// Contents of `landscape.json`.
#[derive(Debug, Clone, Serialize)]
pub struct LandscapeSummary {
    pub alpha_points: usize,
    pub beta_points: usize,
    pub argmin: Cell,
    pub local_minima: Vec<Cell>,
    pub beta_variation: f64,
    pub beta_flat: bool,
}

pub struct LandscapeOutput {
    pub landscape: Landscape<f64>,
    pub summary: LandscapeSummary,
}

impl LandscapeOutput {
    /// Matrix with the beta grid as header row and the alpha grid as first column.
    pub fn csv(&self) -> CliResult<String> {
        let l = &self.landscape;
        let mut header = vec!["alpha\\beta".to_string()];
        header.extend(l.beta_grid.iter().map(|&b| fmt17(b)));
        let rows: Vec<Vec<f64>> = l
            .alpha_grid
            .iter()
            .zip(&l.values)
            .map(|(&a, row)| std::iter::once(a).chain(row.iter().copied()).collect())
            .collect();
        csv_table(&header, &rows)
    }
}

/// Parses `AxB` into grid sizes.
pub fn parse_grid(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Argument(format!("grid must look like 50x50, got `{s}`"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

/// Misfit over the cell-centred grid on (0,2) x (0,1). Without a series
/// the observation is synthesized from the config.
pub fn run_landscape(
    cfg: &RunConfig,
    series: Option<&TimeSeries64>,
    grid: Option<(usize, usize)>,
    seed: Option<u64>,
) -> CliResult<LandscapeOutput> {
    point_observation(cfg)?;
    let exp = Experiment::new(cfg)?;
    let generated;
    let series = match series {
        Some(s) => s,
        None => {
            generated = run_solve(cfg, seed)?;
            generated.observed()
        }
    };
    let (na, nb) = grid.unwrap_or((cfg.recovery.grid.alpha, cfg.recovery.grid.beta));
    let alphas = centered_grid(0.0, 2.0, na);
    let betas = centered_grid(0.0, 1.0, nb);
    let misfit = Misfit::new(series, &exp.spectrum, &exp.initial, exp.sensor)?;
    let landscape = residual_landscape(&misfit, &alphas, &betas)?;
    let cell = |(i, j): (usize, usize)| Cell {
        alpha: alphas[i],
        beta: betas[j],
        misfit: landscape.values[i][j],
    };
    let summary = LandscapeSummary {
        alpha_points: na,
        beta_points: nb,
        argmin: cell(landscape.argmin()),
        local_minima: landscape.local_minima().into_iter().map(cell).collect(),
        beta_variation: landscape.beta_variation(),
        beta_flat: detect_beta_flat(&landscape, cfg.recovery.flat_tolerance),
    };
    Ok(LandscapeOutput { landscape, summary })
}

/// (z, E_a(z)) at `count` points from `from` to `to`, evenly spaced or,
/// with `log`, geometrically spaced in |z| (both ends of one sign, non-zero).
pub fn run_ml(alpha: f64, from: f64, to: f64, count: usize, log: bool) -> CliResult<String> {
    let params = MlParams::with_alpha(alpha)?;
    if log && !(from * to > 0.0) {
        return Err(CliError::Argument(
            "log spacing needs both ends non-zero and of one sign".into(),
        ));
    }
    let z: Vec<f64> = match count {
        0 => Vec::new(),
        1 => vec![from],
        _ => {
            let last = (count - 1) as f64;
            (0..count)
                .map(|i| {
                    let s = i as f64 / last;
                    if i == 0 {
                        from
                    } else if i + 1 == count {
                        to
                    } else if log {
                        from.signum() * (from.abs().ln() * (1.0 - s) + to.abs().ln() * s).exp()
                    } else {
                        from + (to - from) * s
                    }
                })
                .collect()
        }
    };
    let mut rows = Vec::with_capacity(z.len());
    for &zi in &z {
        rows.push(vec![zi, ml_eval(&params, zi)?]);
    }
    csv_table(&["z".into(), "e".into()], &rows)
}
