use std::f64::consts::PI;
use std::path::Path;

use fracdiff::forward::{check_orders, geometric_times, linear_times};
use fracdiff::recovery::{RecoveryConfig, Window, WindowPolicy};
use fracdiff::spectral::OperatorSpec;
use fracdiff::Spectrum64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CONFIG_VERSION: u32 = 1;

/// Experiment description read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    pub operator: OperatorConfig,
    pub problem: ProblemConfig,
    #[serde(default)]
    pub observation: ObservationConfig,
    #[serde(default)]
    pub noise: NoiseConfig,
    #[serde(default)]
    pub recovery: RecoverySettings,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorConfig {
    /// -u'' on (0, 1).
    Unit { mesh_points: usize },
    /// Constant coefficients rescaled to a discrete first eigenvalue of 1.
    #[serde(rename = "scaled_lambda1_eq_1")]
    ScaledLambda1Eq1 { mesh_points: usize },
    /// Diffusivity 1 + x.
    VariableDiffusivity { mesh_points: usize },
    Custom { spec: OperatorSpec<f64> },
}

impl OperatorConfig {
    pub fn spec(&self) -> OperatorSpec<f64> {
        match *self {
            OperatorConfig::Unit { mesh_points } => OperatorSpec::unit(mesh_points),
            OperatorConfig::ScaledLambda1Eq1 { mesh_points } => OperatorSpec::scaled(1.0, mesh_points),
            OperatorConfig::VariableDiffusivity { mesh_points } => {
                OperatorSpec::variable_diffusivity(mesh_points)
            }
            OperatorConfig::Custom { spec } => spec,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub alpha: f64,
    pub beta: f64,
    pub initial: InitialConfig,
    pub times: TimeGridConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialConfig {
    /// sin^3(pi x / L)
    SinCubed,
    /// x (L - x)
    Parabola,
    /// Discrete first eigenvector.
    FirstEigenvector,
    /// Explicit nodal values.
    Values { values: Vec<f64> },
}

impl InitialConfig {
    pub fn nodal(&self, op: &OperatorSpec<f64>, spec: &Spectrum64) -> CliResult<Vec<f64>> {
        let l = op.length;
        Ok(match self {
            InitialConfig::SinCubed => op.interpolate(|x| (PI * x / l).sin().powi(3)),
            InitialConfig::Parabola => op.interpolate(|x| x * (l - x)),
            InitialConfig::FirstEigenvector => spec.eigenvector(1).to_vec(),
            InitialConfig::Values { values } => {
                if values.len() != op.mesh_points {
                    return Err(CliError::Config(format!(
                        "problem.initial.values has {} entries, the mesh has {}",
                        values.len(),
                        op.mesh_points
                    )));
                }
                values.clone()
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Geometric,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGridConfig {
    pub spacing: Spacing,
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl TimeGridConfig {
    pub fn times(&self) -> CliResult<Vec<f64>> {
        let t = match self.spacing {
            Spacing::Geometric => geometric_times(self.start, self.end, self.count),
            Spacing::Linear => linear_times(self.start, self.end, self.count),
        };
        t.map_err(|e| CliError::Config(format!("problem.times: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SensorConfig {
    /// Interior node nearest to x.
    X(f64),
    /// 0-based interior node index.
    Node(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightPreset {
    Ones,
    FirstEigenvector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservationConfig {
    pub sensor: SensorConfig,
    /// Observe (u, rho)_h instead of u(x0, t).
    #[serde(default)]
    pub weight: Option<WeightPreset>,
}

impl Default for ObservationConfig {
    fn default() -> Self {
        Self {
            sensor: SensorConfig::X(0.5),
            weight: None,
        }
    }
}

impl ObservationConfig {
    pub fn node(&self, op: &OperatorSpec<f64>) -> CliResult<usize> {
        match self.sensor {
            SensorConfig::X(x) if x > 0.0 && x < op.length => Ok(op.nearest_node(x)),
            SensorConfig::X(x) => Err(CliError::Config(format!(
                "observation.sensor.x = {x} outside (0, {})",
                op.length
            ))),
            SensorConfig::Node(i) if i < op.mesh_points => Ok(i),
            SensorConfig::Node(i) => Err(CliError::Config(format!(
                "observation.sensor.node = {i} outside 0..{}",
                op.mesh_points
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    pub level: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RecoverySettings {
    pub max_moments: usize,
    /// Fixed fit window [t_lo, t_hi]; automatic when absent.
    pub window: Option<[f64; 2]>,
    pub identifiability_tolerance: f64,
    pub joint: bool,
    pub grid: GridConfig,
    pub flat_tolerance: f64,
}

impl Default for RecoverySettings {
    fn default() -> Self {
        Self {
            max_moments: 3,
            window: None,
            identifiability_tolerance: 1e-8,
            joint: true,
            grid: GridConfig { alpha: 50, beta: 50 },
            flat_tolerance: 1e-12,
        }
    }
}

impl RecoverySettings {
    pub fn core(&self) -> RecoveryConfig<f64> {
        RecoveryConfig {
            max_moments: self.max_moments,
            window: match self.window {
                Some([lo, hi]) => WindowPolicy::Fixed(Window { lo, hi }),
                None => WindowPolicy::Auto,
            },
            identifiability_tolerance: self.identifiability_tolerance,
            joint: self.joint,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub directory: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            directory: "out".into(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| {
            CliError::Config(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.version != CONFIG_VERSION {
            return Err(CliError::Config(format!(
                "unsupported config version {} (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        let op = self.operator.spec();
        if op.mesh_points < 3 {
            return Err(CliError::Config("operator.mesh_points must be at least 3".into()));
        }
        check_orders(self.problem.alpha, self.problem.beta)
            .map_err(|e| CliError::Config(format!("problem: {e}")))?;
        self.problem.times.times()?;
        self.observation.node(&op)?;
        if !(self.noise.level >= 0.0 && self.noise.level.is_finite()) {
            return Err(CliError::Config(format!(
                "noise.level must be non-negative, got {}",
                self.noise.level
            )));
        }
        let r = &self.recovery;
        if r.max_moments == 0 || r.max_moments > 3 {
            return Err(CliError::Config("recovery.max_moments must lie in 1..=3".into()));
        }
        if r.grid.alpha == 0 || r.grid.beta == 0 {
            return Err(CliError::Config("recovery.grid sizes must be positive".into()));
        }
        if !(r.identifiability_tolerance > 0.0) || !(r.flat_tolerance > 0.0) {
            return Err(CliError::Config("recovery tolerances must be positive".into()));
        }
        if let Some([lo, hi]) = r.window {
            if !(lo > 0.0 && hi > lo) {
                return Err(CliError::Config(format!("recovery.window [{lo}, {hi}] is empty")));
            }
        }
        Ok(())
    }
}
