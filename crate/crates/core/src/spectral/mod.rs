//! Finite-difference realization of the elliptic operator, its spectrum and
//! fractional powers.

mod eigen;
mod fractional;
mod identifiability;
mod operator;

pub use eigen::{eigendecompose, eigendecompose_ql, Spectrum};
pub use fractional::{balakrishnan_neg_power, fractional_apply, BalakrishnanConfig};
pub use identifiability::{
    check_identifiability, grouped_coefficient, grouped_coefficients, resolvent_positivity_check,
    Identifiability,
};
pub use operator::{discretize, DiscreteOperator, OperatorSpec, Profile};
