//! Bessel, Hankel and Struve functions of integer order and positive real
//! argument, plus the closed-form antiderivative of `H_0`.
//!
//! Negative orders are folded onto non-negative ones through
//! `C_{-n}(z) = (-1)^n C_n(z)` before any evaluation takes place.

mod bessel;
mod struve;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use bessel::j0_y0_regular;
pub use struve::struve;

/// Largest supported `|n|`.
pub const MAX_ORDER: i64 = 512;
/// Supported argument range `[MIN_ARGUMENT, MAX_ARGUMENT]`.
pub const MIN_ARGUMENT: f64 = 1e-8;
pub const MAX_ARGUMENT: f64 = 1e6;

/// Regime switch points. Each one is straddled by an oracle test.
pub mod thresholds {
    /// At or below this argument the defining power series is summed.
    pub const SERIES_MAX_Z: f64 = 2.0;
    /// From here on orders 0 and 1 come from the Hankel asymptotic expansion.
    pub const ASYMPTOTIC_MIN_Z: f64 = 25.0;
    /// From here on `St_0`, `St_1` come from the `St_n - Y_n` expansion.
    pub const STRUVE_ASYMPTOTIC_MIN_Z: f64 = 30.0;
}

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Series,
    Asymptotic,
    Recurrence,
}

/// A validated integer order, `|n| <= MAX_ORDER`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Order(i64);

impl Order {
    pub fn new(n: i64) -> Result<Self> {
        if n.abs() > MAX_ORDER {
            return Err(Error::OrderOutOfRange { order: n, cap: MAX_ORDER });
        }
        Ok(Self(n))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// `|n|` together with the parity sign `(-1)^n` applied when `n < 0`.
    fn fold(self) -> (usize, bool) {
        let n = self.0;
        (n.unsigned_abs() as usize, n < 0 && n % 2 != 0)
    }
}

impl TryFrom<i64> for Order {
    type Error = Error;
    fn try_from(n: i64) -> Result<Self> {
        Self::new(n)
    }
}

/// A complex special-function value with the regime that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValue<T> {
    pub re: T,
    pub im: T,
    pub regime: Regime,
}

impl<T: Real> SpecialValue<T> {
    pub fn new(value: Complex<T>, regime: Regime) -> Self {
        Self { re: value.re, im: value.im, regime }
    }

    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }

    pub fn norm(&self) -> T {
        self.value().norm()
    }
}

pub(crate) fn check_argument<T: Real>(z: T) -> Result<()> {
    let zf = z.to_f64_lossy();
    if !(MIN_ARGUMENT..=MAX_ARGUMENT).contains(&zf) {
        return Err(Error::ArgumentOutOfRange { value: zf, min: MIN_ARGUMENT, max: MAX_ARGUMENT });
    }
    Ok(())
}

fn order_of(n: i64) -> Result<(usize, bool)> {
    Ok(Order::new(n)?.fold())
}

fn apply_sign<T: Real>(x: T, negate: bool) -> T {
    if negate {
        -x
    } else {
        x
    }
}

/// Bessel function of the first kind `J_n(z)`.
pub fn bessel_j<T: Real>(n: i64, z: T) -> Result<T> {
    let (m, negate) = order_of(n)?;
    check_argument(z)?;
    let (value, _) = bessel::j_nonneg(m, z);
    Ok(apply_sign(value, negate))
}

/// Bessel function of the second kind `Y_n(z)`. Fails with
/// [`Error::Overflow`] when `|Y_n(z)|` is not representable.
pub fn bessel_y<T: Real>(n: i64, z: T) -> Result<T> {
    let (m, negate) = order_of(n)?;
    check_argument(z)?;
    let (value, _) = bessel::y_nonneg(m, z).ok_or(Error::Overflow {
        what: "Y_n",
        order: n,
        z: z.to_f64_lossy(),
    })?;
    Ok(apply_sign(value, negate))
}

/// Hankel function of the first kind `H_n = J_n + i Y_n`.
pub fn hankel1<T: Real>(n: i64, z: T) -> Result<SpecialValue<T>> {
    let (m, negate) = order_of(n)?;
    check_argument(z)?;
    let (j, j_regime) = bessel::j_nonneg(m, z);
    let (y, y_regime) = bessel::y_nonneg(m, z).ok_or(Error::Overflow {
        what: "H_n",
        order: n,
        z: z.to_f64_lossy(),
    })?;
    let regime = if j_regime == Regime::Recurrence || y_regime == Regime::Recurrence {
        Regime::Recurrence
    } else {
        y_regime
    };
    let value = Complex::new(apply_sign(j, negate), apply_sign(y, negate));
    Ok(SpecialValue::new(value, regime))
}

/// `H_n'(z) = -H_{n+1}(z) + (n/z) H_n(z)`.
pub fn hankel1_prime<T: Real>(n: i64, z: T) -> Result<SpecialValue<T>> {
    Order::new(n)?;
    let h = hankel1(n, z)?;
    let h_next = hankel1(n + 1, z)?;
    let value = -h_next.value() + h.value() * (T::from_i64_lossy(n) / z);
    Ok(SpecialValue::new(value, h.regime))
}

/// `H_1(z) / H_0(z)`, evaluated without forming the (possibly huge) values
/// separately.
pub fn hankel_ratio_1_0<T: Real>(z: T) -> Result<Complex<T>> {
    check_argument(z)?;
    let p = bessel::bessel_pair(z);
    Ok(Complex::new(p.j1, p.y1) / Complex::new(p.j0, p.y0))
}

/// `H_{n+1}(z) / H_n(z)` for `n >= 0` by the ratio form of the upward
/// recurrence, `rho_m = 2m/z - 1/rho_{m-1}`. Never overflows, unlike the
/// individual Hankel values at small `z` and large `n`.
pub fn hankel_ratio<T: Real>(n: usize, z: T) -> Result<Complex<T>> {
    let (m, _) = order_of(n as i64)?;
    let mut rho = hankel_ratio_1_0(z)?;
    for k in 1..=m {
        rho = Complex::from(T::from_usize_lossy(2 * k) / z) - rho.inv();
    }
    Ok(rho)
}

/// `int_0^t H_0(s) ds = t H_0(t) + (pi/2) t (St_0(t) H_1(t) - St_1(t) H_0(t))`.
pub fn h0_partial_integral<T: Real>(t: T) -> Result<SpecialValue<T>> {
    if t <= T::zero() {
        return Err(Error::ArgumentOutOfRange {
            value: t.to_f64_lossy(),
            min: MIN_ARGUMENT,
            max: MAX_ARGUMENT,
        });
    }
    check_argument(t)?;
    let p = bessel::bessel_pair(t);
    let h0 = Complex::new(p.j0, p.y0);
    let h1 = Complex::new(p.j1, p.y1);
    let st0 = struve(0, t)?;
    let st1 = struve(1, t)?;
    let value = h0 * t + (h1 * st0 - h0 * st1) * (T::FRAC_PI_2() * t);
    Ok(SpecialValue::new(value, p.regime))
}
