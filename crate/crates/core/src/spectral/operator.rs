use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Coefficient profile on [0, L].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case")]
pub enum Profile<T> {
    Constant { value: T },
    /// `intercept + slope * x`
    Linear { intercept: T, slope: T },
    /// Constant diffusivity chosen so that the discrete operator without
    /// potential has first eigenvalue exactly `first_eigenvalue`.
    Scaled { first_eigenvalue: T },
}

impl<T: Real> Profile<T> {
    pub fn constant(value: T) -> Self {
        Profile::Constant { value }
    }

    /// Value at `x` on a mesh of `n` interior nodes over [0, length].
    pub fn sample(&self, x: T, length: T, n: usize) -> T {
        match *self {
            Profile::Constant { value } => value,
            Profile::Linear { intercept, slope } => intercept + slope * x,
            Profile::Scaled { first_eigenvalue } => {
                let h = length / T::from_usize_lossy(n + 1);
                let s = (T::PI() * h / (T::lit(2.0) * length)).sin();
                first_eigenvalue * h * h / (T::lit(4.0) * s * s)
            }
        }
    }
}

/// Elliptic operator A u = -(d(x) u')' - c(x) u on (0, L), Dirichlet ends,
/// together with the mesh it is discretized on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorSpec<T> {
    pub diffusivity: Profile<T>,
    pub potential: Profile<T>,
    pub length: T,
    /// Interior nodes.
    pub mesh_points: usize,
    /// Uniform ellipticity constant; sampled diffusivity must not fall below it.
    pub mu: T,
}

impl<T: Real> OperatorSpec<T> {
    /// -u'' on (0, 1).
    pub fn unit(mesh_points: usize) -> Self {
        Self {
            diffusivity: Profile::constant(T::one()),
            potential: Profile::constant(T::zero()),
            length: T::one(),
            mesh_points,
            mu: T::one(),
        }
    }

    /// Constant-coefficient operator on (0, 1) rescaled to a prescribed
    /// first eigenvalue.
    pub fn scaled(first_eigenvalue: T, mesh_points: usize) -> Self {
        let diffusivity = Profile::Scaled { first_eigenvalue };
        let d = diffusivity.sample(T::zero(), T::one(), mesh_points);
        Self {
            diffusivity,
            potential: Profile::constant(T::zero()),
            length: T::one(),
            mesh_points,
            mu: d,
        }
    }

    /// Diffusivity 1 + x on (0, 1).
    pub fn variable_diffusivity(mesh_points: usize) -> Self {
        Self {
            diffusivity: Profile::Linear {
                intercept: T::one(),
                slope: T::one(),
            },
            potential: Profile::constant(T::zero()),
            length: T::one(),
            mesh_points,
            mu: T::one(),
        }
    }

    pub fn mesh_step(&self) -> T {
        self.length / T::from_usize_lossy(self.mesh_points + 1)
    }

    /// Coordinate of interior node `i` (0-based), x_i = (i + 1) h.
    pub fn node(&self, i: usize) -> T {
        self.mesh_step() * T::from_usize_lossy(i + 1)
    }

    /// Nodal values of `f` at the interior nodes.
    pub fn interpolate<F: Fn(T) -> T>(&self, f: F) -> Vec<T> {
        (0..self.mesh_points).map(|i| f(self.node(i))).collect()
    }

    /// Interior node closest to `x`.
    pub fn nearest_node(&self, x: T) -> usize {
        let idx = (x / self.mesh_step()).round() - T::one();
        let max = T::from_usize_lossy(self.mesh_points - 1);
        idx.max(T::zero()).min(max).to_usize().unwrap_or(0)
    }
}

/// Symmetric tridiagonal finite-difference matrix of an [`OperatorSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator<T> {
    diag: Vec<T>,
    /// `off[i]` couples nodes i and i + 1.
    off: Vec<T>,
    mesh_step: T,
}

/// Conservative second-order assembly with midpoint diffusivities:
/// row i has diagonal (d_{i-1/2} + d_{i+1/2})/h^2 - c(x_i) and
/// off-diagonals -d_{i+-1/2}/h^2.
pub fn discretize<T: Real>(spec: &OperatorSpec<T>) -> Result<DiscreteOperator<T>> {
    let n = spec.mesh_points;
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 interior nodes, got {n}"
        )));
    }
    if !(spec.length > T::zero()) || !spec.length.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "interval length must be positive, got {}",
            spec.length
        )));
    }
    if !(spec.mu > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "ellipticity constant must be positive, got {}",
            spec.mu
        )));
    }
    if matches!(spec.potential, Profile::Scaled { .. }) {
        return Err(Error::InvalidParameter(
            "the scaled preset applies to the diffusivity only".into(),
        ));
    }
    let h = spec.mesh_step();
    let half = T::lit(0.5);
    let sample_d = |x: T| spec.diffusivity.sample(x, spec.length, n);

    // midpoints x_{i+1/2} = (i + 1/2) h for i = 0..=n, i.e. between nodes i-1 and i
    let mid: Vec<T> = (0..=n)
        .map(|i| sample_d((T::from_usize_lossy(i) + half) * h))
        .collect();
    for (i, &d) in mid.iter().enumerate() {
        if !(d >= spec.mu) {
            return Err(Error::EllipticityViolated {
                node: i,
                value: d.as_f64(),
                mu: spec.mu.as_f64(),
            });
        }
    }
    for i in 0..n {
        let d = sample_d(spec.node(i));
        if !(d >= spec.mu) {
            return Err(Error::EllipticityViolated {
                node: i,
                value: d.as_f64(),
                mu: spec.mu.as_f64(),
            });
        }
    }
    let h2 = h * h;
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let c = spec.potential.sample(spec.node(i), spec.length, n);
        if c > T::zero() {
            return Err(Error::SignViolated {
                node: i,
                value: c.as_f64(),
            });
        }
        diag.push((mid[i] + mid[i + 1]) / h2 - c);
    }
    let off = (1..n).map(|i| -mid[i] / h2).collect();
    Ok(DiscreteOperator {
        diag,
        off,
        mesh_step: h,
    })
}

impl<T: Real> DiscreteOperator<T> {
    /// Builds an operator from raw tridiagonal bands.
    pub fn from_bands(diag: Vec<T>, off: Vec<T>, mesh_step: T) -> Result<Self> {
        if off.len() + 1 != diag.len() {
            return Err(Error::DimensionMismatch {
                expected: diag.len().saturating_sub(1),
                got: off.len(),
            });
        }
        Ok(Self {
            diag,
            off,
            mesh_step,
        })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn mesh_step(&self) -> T {
        self.mesh_step
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn off_diag(&self) -> &[T] {
        &self.off
    }

    /// Off-diagonals non-positive, diagonal positive.
    pub fn has_m_matrix_sign_pattern(&self) -> bool {
        self.diag.iter().all(|&d| d > T::zero()) && self.off.iter().all(|&o| o <= T::zero())
    }

    /// Upper bound on the spectrum from Gershgorin discs.
    pub fn gershgorin_upper(&self) -> T {
        (0..self.dim())
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { T::zero() };
                let right = if i + 1 < self.dim() { self.off[i].abs() } else { T::zero() };
                self.diag[i] + left + right
            })
            .fold(T::zero(), T::max)
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        check_len(n, v.len())?;
        Ok((0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.off[i] * v[i + 1];
                }
                acc
            })
            .collect())
    }

    /// Solves (A + eta I) w = rhs by the Thomas algorithm.
    ///
    /// No pivoting: A + eta I is a diagonally dominant M-matrix for eta >= 0.
    pub fn solve_shifted(&self, eta: T, rhs: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        check_len(n, rhs.len())?;
        let mut c_prime = vec![T::zero(); n];
        let mut d_prime = vec![T::zero(); n];
        let mut denom = self.diag[0] + eta;
        if n > 1 {
            c_prime[0] = self.off[0] / denom;
        }
        d_prime[0] = rhs[0] / denom;
        for i in 1..n {
            denom = self.diag[i] + eta - self.off[i - 1] * c_prime[i - 1];
            if i + 1 < n {
                c_prime[i] = self.off[i] / denom;
            }
            d_prime[i] = (rhs[i] - self.off[i - 1] * d_prime[i - 1]) / denom;
        }
        let mut w = d_prime;
        for i in (0..n - 1).rev() {
            let next = w[i + 1];
            w[i] -= c_prime[i] * next;
        }
        Ok(w)
    }

    /// Dense row-major copy, mainly for tests.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        let mut m = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            if i + 1 < n {
                m[i][i + 1] = self.off[i];
                m[i + 1][i] = self.off[i];
            }
        }
        m
    }

    /// Smallest eigenvalue by inverse iteration; independent of the full
    /// eigendecomposition.
    pub fn smallest_eigenvalue_estimate(&self, iterations: usize) -> Result<T> {
        let n = self.dim();
        let mut v = vec![T::one(); n];
        let mut estimate = T::zero();
        for _ in 0..iterations.max(1) {
            let w = self.solve_shifted(T::zero(), &v)?;
            let norm = w.iter().map(|&x| x * x).sum::<T>().sqrt();
            let vw: T = v.iter().zip(&w).map(|(&a, &b)| a * b).sum();
            let vv: T = v.iter().map(|&x| x * x).sum();
            estimate = vv / vw;
            v = w.into_iter().map(|x| x / norm).collect();
        }
        Ok(estimate)
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}
