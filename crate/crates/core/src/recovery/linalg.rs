use crate::scalar::Real;

/// Least squares by one-sided Jacobi SVD of the column-scaled design.
pub(crate) struct LstsqSolution<T> {
    pub x: Vec<T>,
    /// sigma_max / sigma_min of the column-scaled design.
    pub condition: T,
}

/// Solves min || sum_j x_j cols[j] - y || with the columns rescaled to
/// unit norm first, so the reported condition number ignores scale.
pub(crate) fn lstsq<T: Real>(cols: &[Vec<T>], y: &[T]) -> LstsqSolution<T> {
    let n = cols.len();
    let scale: Vec<T> = cols
        .iter()
        .map(|c| {
            let s = c.iter().map(|&v| v * v).sum::<T>().sqrt();
            if s > T::zero() { s } else { T::one() }
        })
        .collect();
    let mut u: Vec<Vec<T>> = cols
        .iter()
        .zip(&scale)
        .map(|(c, &s)| c.iter().map(|&v| v / s).collect())
        .collect();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).map(|(&x, &y)| x * y).sum::<T>();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&u[p], &u[p]);
                let beta = dot(&u[q], &u[q]);
                let gamma = dot(&u[p], &u[q]);
                if gamma.abs() <= T::epsilon() * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = (T::one() + t * t).sqrt().recip();
                let s = c * t;
                for mat in [&mut u, &mut v] {
                    let (lo, hi) = mat.split_at_mut(q);
                    for (a, b) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                        let (x, y) = (*a, *b);
                        *a = c * x - s * y;
                        *b = s * x + c * y;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma: Vec<T> = u.iter().map(|c| dot(c, c).sqrt()).collect();
    let smax = sigma.iter().fold(T::zero(), |m, &s| m.max(s));
    let smin = sigma.iter().fold(T::infinity(), |m, &s| m.min(s));
    let condition = if smin > T::zero() { smax / smin } else { T::infinity() };
    let mut x = vec![T::zero(); n];
    for j in 0..n {
        if !(sigma[j] > T::zero()) {
            continue;
        }
        let coef = dot(&u[j], y) / (sigma[j] * sigma[j]);
        for (xi, vij) in x.iter_mut().zip(&v[j]) {
            *xi += coef * *vij;
        }
    }
    for (xi, s) in x.iter_mut().zip(&scale) {
        *xi /= *s;
    }
    LstsqSolution { x, condition }
}
