#![allow(dead_code)]

pub mod oracle;
pub mod quad;

use coupling_modes::specfun::hankel1;
use num_complex::Complex;

/// `int_0^t H_0(x) dx` by quadrature: the small-`x` expansion on `[0, a]`,
/// Gauss-Legendre in `s = ln x` on `[a, 1]` (where the logarithm lives) and
/// composite Gauss-Legendre on `[1, t]`.
pub fn h0_integral_by_quadrature(t: f64) -> Complex<f64> {
    let gamma = 0.577_215_664_901_532_9;
    let a = 1e-7f64;
    let pi = std::f64::consts::PI;
    // H_0(x) = 1 + (2i/pi)(ln(x/2) + gamma) + O(x^2 ln x)
    let head = Complex::new(a, 2.0 / pi * (a * (a / 2.0).ln() - a + gamma * a));
    let h0 = |x: f64| hankel1(0, x).unwrap().value();
    let upper = t.min(1.0);
    let middle = quad::composite(|s: f64| h0(s.exp()) * s.exp(), a.ln(), upper.ln(), 40, 20);
    let tail = if t > 1.0 {
        quad::composite(h0, 1.0, t, (4.0 * t).ceil() as usize, 20)
    } else {
        Complex::new(0.0, 0.0)
    };
    head + middle + tail
}
