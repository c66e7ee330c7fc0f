//! Struve functions `St_0` and `St_1`.

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::bessel::{bessel_pair, j_miller};
use super::thresholds::{SERIES_MAX_Z, STRUVE_ASYMPTOTIC_MIN_Z};
use super::check_argument;

/// Struve function `St_n(z)` for `n` in `{0, 1}`.
pub fn struve<T: Real>(n: i64, z: T) -> Result<T> {
    if !(0..=1).contains(&n) {
        return Err(Error::StruveOrder(n));
    }
    check_argument(z)?;
    let order = n as u8;
    let value = if z <= T::lit(SERIES_MAX_Z) {
        series(order, z)
    } else if z < T::lit(STRUVE_ASYMPTOTIC_MIN_Z) {
        neumann(order, z)
    } else {
        asymptotic(order, z)
    };
    Ok(value)
}

/// `sum_k (-1)^k (z/2)^(2k+n+1) / (Gamma(k+3/2) Gamma(k+n+3/2))`.
fn series<T: Real>(order: u8, z: T) -> T {
    let half = z * T::lit(0.5);
    let nu = T::lit(f64::from(order));
    let gamma_3_2 = T::PI().sqrt() * T::lit(0.5);
    let gamma_first = if order == 0 { gamma_3_2 } else { gamma_3_2 * T::lit(1.5) };
    let mut term = half.powi(i32::from(order) + 1) / (gamma_3_2 * gamma_first);
    let mut sum = term;
    let q = -half * half;
    for k in 0..200usize {
        let kk = T::from_usize_lossy(k);
        term = term * q / ((kk + T::lit(1.5)) * (kk + nu + T::lit(1.5)));
        sum += term;
        if term.abs() <= T::epsilon() * T::lit(0.1) * sum.abs() {
            break;
        }
    }
    sum
}

/// Expansions in Bessel functions with bounded terms:
/// `St_0 = (4/pi) sum J_{2k+1}/(2k+1)`,
/// `St_1 = (2/pi)(1 - J_0) + (4/pi) sum_{k>=1} J_2k/(4k^2-1)`.
fn neumann<T: Real>(order: u8, z: T) -> T {
    let js = j_miller(2, z);
    let four_over_pi = T::lit(4.0) * T::FRAC_1_PI();
    if order == 0 {
        let mut acc = T::zero();
        let mut k = 0usize;
        while 2 * k + 1 < js.len() {
            acc += js[2 * k + 1] / T::from_usize_lossy(2 * k + 1);
            k += 1;
        }
        four_over_pi * acc
    } else {
        let mut acc = T::zero();
        let mut k = 1usize;
        while 2 * k < js.len() {
            let kk = T::from_usize_lossy(k);
            acc += js[2 * k] / (T::lit(4.0) * kk * kk - T::one());
            k += 1;
        }
        T::FRAC_2_PI() * (T::one() - js[0]) + four_over_pi * acc
    }
}

/// `St_n - Y_n ~ (1/pi) sum_k Gamma(k+1/2) (z/2)^(n-2k-1) / Gamma(n+1/2-k)`,
/// rewritten with the reflection formula so every factor stays positive.
fn asymptotic<T: Real>(order: u8, z: T) -> T {
    let pair = bessel_pair(z);
    let inv_pi2 = T::FRAC_1_PI() * T::FRAC_1_PI();
    let two_over_z = T::lit(2.0) / z;
    let x2 = two_over_z * two_over_z;
    // gamma_sq = Gamma(k+1/2)^2, power = (2/z)^(2k+1-n)
    let mut gamma_sq = T::PI();
    let mut power = if order == 0 { two_over_z } else { T::one() };
    let mut acc = T::zero();
    let mut last = T::infinity();
    for k in 0..200usize {
        let kk = T::from_usize_lossy(k);
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let mut term = gamma_sq * power;
        if order == 1 {
            term = term / (T::lit(0.5) - kk);
        }
        if term.abs() > last {
            break;
        }
        acc += sign * term;
        last = term.abs();
        if term.abs() <= T::epsilon() * T::lit(0.1) * acc.abs() {
            break;
        }
        let g = kk + T::lit(0.5);
        gamma_sq = gamma_sq * g * g;
        power = power * x2;
    }
    let base = if order == 0 { pair.y0 } else { pair.y1 };
    base + inv_pi2 * acc
}
