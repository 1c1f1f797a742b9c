use crate::scalar::Real;

/// Outcome of [`nelder_mead`].
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum<T> {
    pub x: Vec<T>,
    pub value: T,
    pub iterations: usize,
    /// Largest distance from the best vertex to another vertex.
    pub diameter: T,
    pub converged: bool,
}

/// Nelder-Mead on the box [lower, upper]; trial points are clamped into the
/// box. Non-finite objective values count as +inf.
pub fn nelder_mead<T: Real, F: FnMut(&[T]) -> T>(
    mut f: F,
    start: &[T],
    step: &[T],
    lower: &[T],
    upper: &[T],
    tolerance: T,
    max_iterations: usize,
) -> Minimum<T> {
    let n = start.len();
    let clamp = |x: &mut Vec<T>| {
        for ((v, &lo), &hi) in x.iter_mut().zip(lower).zip(upper) {
            *v = v.max(lo).min(hi);
        }
    };
    let mut eval = |x: &[T]| {
        let v = f(x);
        if v.is_finite() { v } else { T::infinity() }
    };
    let mut simplex: Vec<Vec<T>> = vec![start.to_vec()];
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] = if x[i] + step[i] <= upper[i] { x[i] + step[i] } else { x[i] - step[i] };
        clamp(&mut x);
        simplex.push(x);
    }
    let mut values: Vec<T> = simplex.iter().map(|x| eval(x)).collect();
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut iterations = 0;
    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        let diameter = simplex[1..]
            .iter()
            .map(|x| {
                x.iter()
                    .zip(&simplex[0])
                    .map(|(&a, &b)| (a - b) * (a - b))
                    .sum::<T>()
                    .sqrt()
            })
            .fold(T::zero(), |m, d| m.max(d));
        if diameter < tolerance || iterations >= max_iterations {
            return Minimum {
                x: simplex[0].clone(),
                value: values[0],
                iterations,
                diameter,
                converged: diameter < tolerance,
            };
        }
        iterations += 1;

        let mut centroid = vec![T::zero(); n];
        for x in &simplex[..n] {
            for (c, &v) in centroid.iter_mut().zip(x) {
                *c += v / T::from_usize_lossy(n);
            }
        }
        let along = |coef: T| {
            let mut x: Vec<T> = centroid
                .iter()
                .zip(&simplex[n])
                .map(|(&c, &w)| c + coef * (c - w))
                .collect();
            clamp(&mut x);
            x
        };
        let reflected = along(T::one());
        let fr = eval(&reflected);
        if fr < values[0] {
            let expanded = along(two);
            let fe = eval(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[n] {
            let x = along(half);
            let v = eval(&x);
            (x, v)
        } else {
            let x = along(-half);
            let v = eval(&x);
            (x, v)
        };
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            let x: Vec<T> = best
                .iter()
                .zip(&simplex[i])
                .map(|(&b, &v)| b + half * (v - b))
                .collect();
            values[i] = eval(&x);
            simplex[i] = x;
        }
    }
}
