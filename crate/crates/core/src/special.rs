//! Gamma-function family on the real line.

use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Integer arguments up to here get Gamma as an exact factorial product.
const EXACT_FACTORIAL_LIMIT: f64 = 23.0;

/// sin(pi x) with exact zeros at the integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    // r in [-1, 1]
    let mut r = x - two * (x / two).round();
    if r > half {
        r = T::one() - r;
    } else if r < -half {
        r = -T::one() - r;
    }
    if r == T::zero() {
        return T::zero();
    }
    (T::PI() * r).sin()
}

fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.floor()
}

/// Lanczos sum A(x) for the shifted argument x = original - 1.
fn lanczos_sum<T: Real>(x: T) -> T {
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += T::lit(c) / (x + T::from_usize_lossy(i));
    }
    acc
}

/// Gamma(x) for x >= 0.5.
fn gamma_right<T: Real>(x: T) -> T {
    if x == x.floor() && x <= T::lit(EXACT_FACTORIAL_LIMIT) {
        let n = x.to_usize().unwrap_or(1);
        return (1..n).fold(T::one(), |acc, k| acc * T::from_usize_lossy(k));
    }
    let xm1 = x - T::one();
    let t = xm1 + T::lit(LANCZOS_G + 0.5);
    let e = xm1 + T::lit(0.5);
    // split the power so that t^e and e^-t do not overflow separately
    let half_pow = t.powf(e * T::lit(0.5));
    let sqrt_two_pi = (T::TAU()).sqrt();
    sqrt_two_pi * half_pow * (half_pow * (-t).exp()) * lanczos_sum(xm1)
}

/// ln|Gamma(x)| for x >= 0.5.
fn ln_gamma_right<T: Real>(x: T) -> T {
    let xm1 = x - T::one();
    let t = xm1 + T::lit(LANCZOS_G + 0.5);
    T::lit(0.5) * T::TAU().ln() + (xm1 + T::lit(0.5)) * t.ln() - t + lanczos_sum(xm1).ln()
}

/// Gamma(x). Returns infinity at the poles x in {0, -1, -2, ...}.
pub fn gamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::infinity();
    }
    if x < T::lit(0.5) {
        T::PI() / (sin_pi(x) * gamma_right(T::one() - x))
    } else {
        gamma_right(x)
    }
}

/// ln|Gamma(x)|.
pub fn ln_gamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::infinity();
    }
    if x < T::lit(0.5) {
        T::PI().ln() - sin_pi(x).abs().ln() - ln_gamma_right(T::one() - x)
    } else {
        ln_gamma_right(x)
    }
}

/// 1/Gamma(x), a total function on the finite reals.
///
/// Exactly zero at the poles of Gamma; uses the reflection formula left of 1/2
/// so large negative arguments do not pass through an overflowing Gamma.
pub fn recip_gamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::zero();
    }
    if x < T::lit(0.5) {
        let one_minus = T::one() - x;
        let g = gamma_right(one_minus);
        if g.is_finite() {
            sin_pi(x) * g / T::PI()
        } else {
            let s = sin_pi(x);
            s.signum() * (ln_gamma_right(one_minus) + s.abs().ln() - T::PI().ln()).exp()
        }
    } else {
        let g = gamma_right(x);
        if g.is_finite() {
            g.recip()
        } else {
            (-ln_gamma_right(x)).exp()
        }
    }
}
