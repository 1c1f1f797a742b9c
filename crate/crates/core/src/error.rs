use thiserror::Error;

/// Failures raised by the numerical core.
///
/// Numeric payloads are carried as `f64` so the error type does not depend on
/// the scalar parameter of the routine that produced it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series did not converge within {max_terms} terms (last term {last_term:e})")]
    NonConvergence { max_terms: usize, last_term: f64 },

    #[error("asymptotic regime not reached: omitted-term estimate {estimate:e} exceeds target {target:e}")]
    Regime { estimate: f64, target: f64 },

    #[error("argument z = {z} outside the supported regime")]
    UnsupportedRegime { z: f64 },

    #[error("bad grid: {0}")]
    BadGrid(String),

    #[error("uniform ellipticity violated at node {node}: diffusivity {value} < mu {mu}")]
    EllipticityViolated { node: usize, value: f64, mu: f64 },

    #[error("potential must be non-positive; node {node} has {value}")]
    SignViolated { node: usize, value: f64 },

    #[error("eigensolver failed to converge for eigenvalue {index} after {iterations} iterations")]
    ConvergenceFailure { index: usize, iterations: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("quadrature not converged: panel doubling changed the result by {change:e} (tolerance {tolerance:e})")]
    QuadratureNotConverged { change: f64, tolerance: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("mode truncation failed: tail estimate {tail:e} above tolerance with all {modes} modes")]
    TruncationFailure { tail: f64, modes: usize },

    #[error("fit window too noisy: R^2 = {r_squared:.6} < {threshold}")]
    WindowTooNoisy { r_squared: f64, threshold: f64 },

    #[error("observation changes sign inside the fit window at t = {t}")]
    SignChange { t: f64 },

    #[error("design matrix ill-conditioned: condition number {condition:e} > {limit:e}")]
    IllConditioned { condition: f64, limit: f64 },

    #[error("no order beta in (0,1) reproduces the leading moment (best misfit {best_misfit:e})")]
    NoRoot { best_misfit: f64 },

    #[error("ambiguous beta: candidates {candidates:?} all match within tolerance")]
    Ambiguous { candidates: Vec<f64> },

    #[error("optimizer hit the iteration limit ({iterations}) with simplex diameter {diameter:e}")]
    MaxIterations { iterations: usize, diameter: f64 },

    #[error("starting point ({alpha}, {beta}) lies outside the admissible box")]
    StartOutOfBox { alpha: f64, beta: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
