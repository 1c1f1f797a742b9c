//! Space-time fractional diffusion on an interval: Mittag-Leffler evaluation,
//! spectral calculus of a finite-difference Sturm-Liouville operator, the
//! eigenfunction-expansion forward solution and recovery of both fractional
//! orders from a single-point time series.
//!
//! Every routine is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64` or `f32`.

pub mod caputo;
pub mod error;
pub mod forward;
pub mod mittag_leffler;
pub mod noise;
pub mod quadrature;
pub mod recovery;
pub mod scalar;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Spectrum64 = spectral::Spectrum<f64>;
pub type Spectrum32 = spectral::Spectrum<f32>;
pub type OperatorSpec64 = spectral::OperatorSpec<f64>;
pub type OperatorSpec32 = spectral::OperatorSpec<f32>;
pub type ProblemSpec64 = forward::ProblemSpec<f64>;
pub type ProblemSpec32 = forward::ProblemSpec<f32>;
pub type TimeSeries64 = forward::TimeSeries<f64>;
pub type TimeSeries32 = forward::TimeSeries<f32>;
pub type MlParams64 = mittag_leffler::MlParams<f64>;
pub type MlParams32 = mittag_leffler::MlParams<f32>;
