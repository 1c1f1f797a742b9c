use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::eigen::Spectrum;
use super::operator::{check_len, DiscreteOperator};

/// Solves (A + eta) w = a and reports whether w is strictly positive at
/// every node, the discrete form of the strong maximum principle.
pub fn resolvent_positivity_check<T: Real>(
    op: &DiscreteOperator<T>,
    eta: T,
    a: &[T],
) -> Result<bool> {
    if !(eta >= T::zero()) {
        return Err(Error::PreconditionViolated(format!(
            "shift must be non-negative, got {eta}"
        )));
    }
    check_len(op.dim(), a.len())?;
    if a.iter().any(|&x| x < T::zero()) || !a.iter().any(|&x| x > T::zero()) {
        return Err(Error::PreconditionViolated(
            "datum must be non-negative and not identically zero".into(),
        ));
    }
    let w = op.solve_shifted(eta, a)?;
    Ok(w.iter().all(|&x| x > T::zero()))
}

/// a_k = (a, phi_k)_h phi_k(x0) for mode `k` (1-based) and sensor node `x0`.
pub fn grouped_coefficient<T: Real>(spec: &Spectrum<T>, a: &[T], x0: usize, k: usize) -> Result<T> {
    check_len(spec.dim(), a.len())?;
    check_sensor(spec, x0)?;
    if k == 0 || k > spec.len() {
        return Err(Error::InvalidParameter(format!(
            "mode {k} outside 1..={}",
            spec.len()
        )));
    }
    let phi = spec.eigenvector(k);
    Ok(spec.inner(a, phi) * phi[x0])
}

/// All grouped coefficients a_1..a_n at sensor `x0`.
pub fn grouped_coefficients<T: Real>(spec: &Spectrum<T>, a: &[T], x0: usize) -> Result<Vec<T>> {
    check_sensor(spec, x0)?;
    let c = spec.coefficients(a)?;
    Ok(c.into_iter()
        .zip(spec.eigenvectors())
        .map(|(c, phi)| c * phi[x0])
        .collect())
}

pub(crate) fn check_sensor<T: Real>(spec: &Spectrum<T>, x0: usize) -> Result<()> {
    if x0 >= spec.dim() {
        return Err(Error::InvalidParameter(format!(
            "sensor node {x0} outside 0..{}",
            spec.dim()
        )));
    }
    Ok(())
}

/// Outcome of the mode condition: some k0 with a_{k0} != 0 and
/// lambda_{k0} != 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Identifiability {
    /// Smallest qualifying mode (1-based), if any.
    pub k0: Option<usize>,
    /// |a(x0)| above the threshold and some eigenvalue differs from 1.
    pub sufficient_condition: bool,
    /// The datum has one sign, as the uniqueness result assumes.
    pub one_signed: bool,
    /// Modes whose coefficient exceeded the threshold but whose eigenvalue is 1.
    pub unit_eigenvalue_modes: Vec<usize>,
    pub threshold: f64,
}

impl Identifiability {
    pub fn is_identifiable(&self) -> bool {
        self.k0.is_some()
    }
}

/// Searches the resolved modes for the smallest k with
/// |a_k| > tol * ||a||_h and |lambda_k - 1| > tol.
pub fn check_identifiability<T: Real>(
    spec: &Spectrum<T>,
    a: &[T],
    x0: usize,
    tol: T,
) -> Result<Identifiability> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let coeffs = grouped_coefficients(spec, a, x0)?;
    let threshold = tol * spec.norm(a);
    let mut k0 = None;
    let mut unit_modes = Vec::new();
    for (i, (&ak, &lambda)) in coeffs.iter().zip(spec.eigenvalues()).enumerate() {
        if ak.abs() <= threshold {
            continue;
        }
        if (lambda - T::one()).abs() > tol {
            k0 = Some(i + 1);
            break;
        }
        unit_modes.push(i + 1);
    }
    let sufficient_condition = a[x0].abs() > threshold
        && spec
            .eigenvalues()
            .iter()
            .any(|&l| (l - T::one()).abs() > tol);
    let one_signed =
        a.iter().all(|&x| x >= T::zero()) || a.iter().all(|&x| x <= T::zero());
    Ok(Identifiability {
        k0,
        sufficient_condition,
        one_signed,
        unit_eigenvalue_modes: unit_modes,
        threshold: threshold.as_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eigen::eigendecompose;
    use crate::spectral::operator::{discretize, OperatorSpec};

    fn setup(spec: OperatorSpec<f64>) -> (DiscreteOperator<f64>, Spectrum<f64>) {
        let op = discretize(&spec).unwrap();
        let s = eigendecompose(&op).unwrap();
        (op, s)
    }

    #[test]
    fn point_source_green_function_is_positive() {
        let (op, _) = setup(OperatorSpec::unit(41));
        let mut a = vec![0.0; 41];
        a[7] = 1.0;
        assert!(resolvent_positivity_check(&op, 0.0, &a).unwrap());
        assert!(resolvent_positivity_check(&op, 10.0, &[1.0; 41]).unwrap());
    }

    #[test]
    fn positivity_rejects_invalid_data() {
        let (op, _) = setup(OperatorSpec::unit(11));
        assert!(resolvent_positivity_check(&op, 0.0, &[0.0; 11]).is_err());
        let mut a = vec![1.0; 11];
        a[3] = -0.1;
        assert!(resolvent_positivity_check(&op, 0.0, &a).is_err());
        assert!(resolvent_positivity_check(&op, -1.0, &[1.0; 11]).is_err());
    }

    #[test]
    fn grouped_coefficient_of_an_eigenvector() {
        let (_, s) = setup(OperatorSpec::unit(49));
        let phi = s.eigenvector(1).to_vec();
        let x0 = 24;
        assert!((grouped_coefficient(&s, &phi, x0, 1).unwrap() - phi[x0]).abs() < 1e-12);
        assert!(grouped_coefficient(&s, &phi, x0, 2).unwrap().abs() < 1e-10);
        assert!(grouped_coefficient(&s, &phi, x0, 0).is_err());
        assert!(grouped_coefficient(&s, &phi, 49, 1).is_err());
    }

    #[test]
    fn sensor_on_a_nodal_point() {
        // phi_2 vanishes at the midpoint
        let (_, s) = setup(OperatorSpec::unit(49));
        let phi2 = s.eigenvector(2).to_vec();
        let id = check_identifiability(&s, &phi2, 24, 1e-8).unwrap();
        assert_eq!(id.k0, None);
        assert!(!id.sufficient_condition);
        assert!(!id.one_signed);
    }

    #[test]
    fn unit_first_eigenvalue_blocks_identification() {
        let (_, s) = setup(OperatorSpec::scaled(1.0, 49));
        assert!((s.eigenvalue(1) - 1.0).abs() < 1e-12);
        let phi = s.eigenvector(1).to_vec();
        let id = check_identifiability(&s, &phi, 24, 1e-8).unwrap();
        assert_eq!(id.k0, None);
        assert_eq!(id.unit_eigenvalue_modes, vec![1]);
        assert!(id.sufficient_condition);
    }
}
