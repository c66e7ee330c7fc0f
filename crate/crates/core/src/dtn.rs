//! Modal symbols of the exterior Dirichlet-to-Neumann map on the unit circle.
//!
//! For boundary data `f = sum a_n e^{i n theta}` the outgoing exterior
//! solution has radial derivative `sum a_n lambda_n(k) e^{i n theta}` at
//! `r = 1`, with `lambda_n(k) = k H_n'(k) / H_n(k)`. The operator is only
//! represented through this diagonal symbol.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{self, MAX_ORDER};

/// `lambda_n(k)` for one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DtnCoefficient<T> {
    pub n: i64,
    pub k: T,
    pub value: Complex<T>,
}

/// `lambda_n(k) = k H_n'(k)/H_n(k) = |n| - k H_{|n|+1}(k)/H_{|n|}(k)`.
///
/// The ratio form is algebraically identical to the recurrence
/// `H_n' = -H_{n+1} + (n/z) H_n` divided by `H_n`, and stays finite where
/// `H_n(k)` itself overflows (large `|n|`, small `k`). Symmetric in `n`.
pub fn dtn_coeff<T: Real>(n: i64, k: T) -> Result<DtnCoefficient<T>> {
    if n.abs() > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order: n, cap: MAX_ORDER });
    }
    let m = n.unsigned_abs() as usize;
    let rho = specfun::hankel_ratio(m, k)?;
    let value = Complex::from(T::from_usize_lossy(m)) - rho * k;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite(format!("DtN symbol n={n}, k={}", k.to_f64_lossy())));
    }
    Ok(DtnCoefficient { n, k, value })
}

/// `|lambda_n(k) - (-|n|)|`, the mode-wise distance to the static limit.
pub fn dtn_limit_gap<T: Real>(n: i64, k: T) -> Result<T> {
    let c = dtn_coeff(n, k)?;
    Ok((c.value + Complex::from(T::from_i64_lossy(n.abs()))).norm())
}

/// `Re <T_k f, f> = 2 pi sum |a_n|^2 Re lambda_n(k)` for a finite modal sum.
pub fn quadratic_form_real<T: Real>(modes: &[(i64, Complex<T>)], k: T) -> Result<T> {
    let mut acc = T::zero();
    for &(n, a) in modes {
        acc += a.norm_sqr() * dtn_coeff(n, k)?.value.re;
    }
    Ok(T::lit(2.0) * T::PI() * acc)
}
