//! Evaluation kernels for integer-order Bessel functions of real argument.
//!
//! Three regimes are used, selected by the constants in [`super::thresholds`]:
//!
//! * the defining power series for small arguments (and for `J_n` whenever
//!   `z^2/4 <= n + 1`, where the series is free of cancellation);
//! * Miller's backward recurrence for `J`, normalized with
//!   `J_0 + 2 sum J_2k = 1`, combined with Neumann series for `Y_0` and `Y_1`;
//! * the Hankel asymptotic expansion for orders 0 and 1 at large argument.
//!
//! Higher orders of `Y` always come from upward recurrence, which is stable
//! for the dominant solution.

use crate::scalar::Real;

use super::thresholds::{ASYMPTOTIC_MIN_Z, SERIES_MAX_Z};
use super::Regime;

/// `psi(n) = -gamma + sum_{k=1}^{n-1} 1/k` for `n >= 1`.
pub(crate) fn digamma_int<T: Real>(n: usize) -> T {
    let mut acc = -T::euler_gamma();
    for k in 1..n {
        acc += T::one() / T::from_usize_lossy(k);
    }
    acc
}

/// Whether the power series for `J_n(z)` is the preferred evaluation.
pub(crate) fn j_series_preferred<T: Real>(n: usize, z: T) -> bool {
    z <= T::lit(SERIES_MAX_Z) || z * z * T::lit(0.25) <= T::from_usize_lossy(n + 1)
}

/// `J_n(z) = (z/2)^n sum_k (-z^2/4)^k / (k! (n+k)!)`.
pub(crate) fn j_series<T: Real>(n: usize, z: T) -> T {
    let half = z * T::lit(0.5);
    // (z/2)^n / n!, built incrementally so that it underflows gracefully
    let mut lead = T::one();
    for i in 1..=n {
        lead = lead * half / T::from_usize_lossy(i);
    }
    if lead == T::zero() {
        return T::zero();
    }
    let q = -half * half;
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..400 {
        term = term * q / (T::from_usize_lossy(k) * T::from_usize_lossy(n + k));
        sum += term;
        if term.abs() <= T::epsilon() * T::lit(0.25) * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Starting index for Miller's algorithm so that `J_N(z)` is negligible both
/// against the normalization sum and against `J_nmax(z)`.
fn miller_start<T: Real>(nmax: usize, z: T) -> usize {
    let m = z.to_f64_lossy().max(nmax as f64);
    let start = m + (80.0 * m).sqrt() + 16.0;
    let start = start.ceil() as usize;
    start + (start & 1)
}

/// `J_0(z), ..., J_N(z)` by backward recurrence; the returned vector has at
/// least `nmax + 1` entries and extends to the (even) starting index.
pub(crate) fn j_miller<T: Real>(nmax: usize, z: T) -> Vec<T> {
    let start = miller_start(nmax, z);
    let mut vals = vec![T::zero(); start + 1];
    let big = T::max_value().sqrt();
    let inv_big = T::one() / big;
    let two_over_z = T::lit(2.0) / z;

    let mut next = T::zero(); // j_{k+1}
    let mut cur = T::min_positive_value().sqrt(); // j_k
    vals[start] = cur;
    for k in (1..=start).rev() {
        let prev = T::from_usize_lossy(k) * two_over_z * cur - next;
        next = cur;
        cur = prev;
        vals[k - 1] = cur;
        if cur.abs() > big {
            for v in vals[k - 1..].iter_mut() {
                *v = *v * inv_big;
            }
            next = next * inv_big;
            cur = vals[k - 1];
        }
    }

    let mut norm = vals[0];
    for v in vals.iter().skip(2).step_by(2) {
        norm += T::lit(2.0) * *v;
    }
    for v in vals.iter_mut() {
        *v = *v / norm;
    }
    vals
}

/// Hankel asymptotic expansion for order 0 or 1, returning `(J, Y)`.
pub(crate) fn hankel_asymptotic<T: Real>(order: u8, z: T) -> (T, T) {
    let mu = T::lit(4.0 * f64::from(order) * f64::from(order));
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let eight_z = T::lit(8.0) * z;
    for j in 1..200usize {
        let odd = T::from_usize_lossy(2 * j - 1);
        let next = term * (mu - odd * odd) / (T::from_usize_lossy(j) * eight_z);
        if next.abs() > term.abs() && j > 2 {
            break;
        }
        term = next;
        match j % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() <= T::epsilon() * T::lit(0.1) * (p.abs() + q.abs()) {
            break;
        }
    }
    let (s, c) = z.sin_cos();
    let r = T::FRAC_1_SQRT_2();
    let (cos_chi, sin_chi) = if order == 0 {
        ((c + s) * r, (s - c) * r)
    } else {
        ((s - c) * r, -(s + c) * r)
    };
    let amp = (T::FRAC_2_PI() / z).sqrt();
    (
        amp * (p * cos_chi - q * sin_chi),
        amp * (p * sin_chi + q * cos_chi),
    )
}

/// Orders 0 and 1 of both kinds at one argument.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BesselPair<T> {
    pub j0: T,
    pub j1: T,
    pub y0: T,
    pub y1: T,
    pub regime: Regime,
}

pub(crate) fn bessel_pair<T: Real>(z: T) -> BesselPair<T> {
    let two_over_pi = T::FRAC_2_PI();
    let log_half = (z * T::lit(0.5)).ln();
    if z <= T::lit(SERIES_MAX_Z) {
        let j0 = j_series(0, z);
        let j1 = j_series(1, z);
        let y0 = y0_regular_series(z) + two_over_pi * log_half * j0;
        let y1 = y1_series(z, j1, log_half);
        BesselPair { j0, j1, y0, y1, regime: Regime::Series }
    } else if z < T::lit(ASYMPTOTIC_MIN_Z) {
        let js = j_miller(1, z);
        let (j0, j1) = (js[0], js[1]);
        let y0 = y0_regular_neumann(&js) + two_over_pi * log_half * j0;
        let y1 = y1_neumann(z, &js, log_half);
        BesselPair { j0, j1, y0, y1, regime: Regime::Recurrence }
    } else {
        let (j0, y0) = hankel_asymptotic(0, z);
        let (j1, y1) = hankel_asymptotic(1, z);
        BesselPair { j0, j1, y0, y1, regime: Regime::Asymptotic }
    }
}

/// `Y_0(z) - (2/pi) ln(z/2) J_0(z)` from the power series.
fn y0_regular_series<T: Real>(z: T) -> T {
    let q = -z * z * T::lit(0.25);
    let mut term = T::one(); // q^k / (k!)^2
    let mut harmonic = T::zero();
    let mut j0 = T::one();
    let mut acc = T::zero();
    for k in 1..200usize {
        let kk = T::from_usize_lossy(k);
        term = term * q / (kk * kk);
        harmonic += T::one() / kk;
        j0 += term;
        acc += harmonic * term;
        if term.abs() * harmonic <= T::epsilon() * T::lit(0.1) * acc.abs().max(T::epsilon()) {
            break;
        }
    }
    T::FRAC_2_PI() * (T::euler_gamma() * j0 - acc)
}

/// Appendix series for `Y_1`, with the digamma values by partial sums.
fn y1_series<T: Real>(z: T, j1: T, log_half: T) -> T {
    let half = z * T::lit(0.5);
    let q = -half * half;
    let mut term = T::one(); // q^k / (k! (k+1)!)
    let mut sum = (digamma_int::<T>(1) + digamma_int::<T>(2)) * term;
    let mut psi_a = digamma_int::<T>(1);
    let mut psi_b = digamma_int::<T>(2);
    for k in 1..200usize {
        term = term * q / (T::from_usize_lossy(k) * T::from_usize_lossy(k + 1));
        psi_a += T::one() / T::from_usize_lossy(k);
        psi_b += T::one() / T::from_usize_lossy(k + 1);
        let add = (psi_a + psi_b) * term;
        sum += add;
        if add.abs() <= T::epsilon() * T::lit(0.1) * sum.abs() {
            break;
        }
    }
    let inv_pi = T::FRAC_1_PI();
    -inv_pi / half + T::FRAC_2_PI() * log_half * j1 - inv_pi * half * sum
}

/// `Y_0(z) - (2/pi) ln(z/2) J_0(z) = (2/pi) (gamma J_0 - 2 sum (-1)^k J_2k / k)`.
fn y0_regular_neumann<T: Real>(js: &[T]) -> T {
    let mut acc = T::zero();
    let mut sign = -T::one();
    let mut k = 1usize;
    while 2 * k < js.len() {
        acc += sign * js[2 * k] / T::from_usize_lossy(k);
        sign = -sign;
        k += 1;
    }
    T::FRAC_2_PI() * (T::euler_gamma() * js[0] - T::lit(2.0) * acc)
}

/// Term-by-term derivative of the Neumann series for `Y_0`.
fn y1_neumann<T: Real>(z: T, js: &[T], log_half: T) -> T {
    let mut acc = T::zero();
    let mut sign = -T::one();
    let mut k = 1usize;
    while 2 * k + 1 < js.len() {
        acc += sign * (js[2 * k - 1] - js[2 * k + 1]) / T::from_usize_lossy(k);
        sign = -sign;
        k += 1;
    }
    let two_over_pi = T::FRAC_2_PI();
    -two_over_pi / z * js[0] + two_over_pi * (log_half + T::euler_gamma()) * js[1] + two_over_pi * acc
}

/// `(J_0(z), Y_0(z) - (2/pi) ln(z/2) J_0(z))` for `z >= 0`. Both parts are
/// entire functions of `z^2`; this is the smooth remainder needed by the
/// single-layer kernel split.
pub fn j0_y0_regular<T: Real>(z: T) -> (T, T) {
    if z <= T::lit(SERIES_MAX_Z) {
        (j_series(0, z), y0_regular_series(z))
    } else if z < T::lit(ASYMPTOTIC_MIN_Z) {
        let js = j_miller(0, z);
        (js[0], y0_regular_neumann(&js))
    } else {
        let (j0, y0) = hankel_asymptotic(0, z);
        (j0, y0 - T::FRAC_2_PI() * (z * T::lit(0.5)).ln() * j0)
    }
}

/// `J_n(z)` for `n >= 0`, `z > 0`.
pub(crate) fn j_nonneg<T: Real>(n: usize, z: T) -> (T, Regime) {
    if j_series_preferred(n, z) {
        return (j_series(n, z), Regime::Series);
    }
    if z >= T::lit(ASYMPTOTIC_MIN_Z) && T::from_usize_lossy(n) < z {
        let (j0, _) = hankel_asymptotic(0, z);
        if n == 0 {
            return (j0, Regime::Asymptotic);
        }
        let (j1, _) = hankel_asymptotic(1, z);
        if n == 1 {
            return (j1, Regime::Asymptotic);
        }
        let (mut prev, mut cur) = (j0, j1);
        for m in 1..n {
            let next = T::from_usize_lossy(2 * m) / z * cur - prev;
            prev = cur;
            cur = next;
        }
        return (cur, Regime::Recurrence);
    }
    (j_miller(n, z)[n], Regime::Recurrence)
}

/// `Y_n(z)` for `n >= 0`, `z > 0`; `None` on overflow.
pub(crate) fn y_nonneg<T: Real>(n: usize, z: T) -> Option<(T, Regime)> {
    let pair = bessel_pair(z);
    let (y, regime) = match n {
        0 => (pair.y0, pair.regime),
        1 => (pair.y1, pair.regime),
        _ => {
            let (mut prev, mut cur) = (pair.y0, pair.y1);
            for m in 1..n {
                let next = T::from_usize_lossy(2 * m) / z * cur - prev;
                prev = cur;
                cur = next;
                if !cur.is_finite() {
                    return None;
                }
            }
            (cur, Regime::Recurrence)
        }
    };
    y.is_finite().then_some((y, regime))
}
