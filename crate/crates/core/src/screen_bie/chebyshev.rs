//! Chebyshev machinery on `[-1, 1]` with the weight `(1 - t^2)^{-1/2}`.
//!
//! Nodes are those of the first kind, `t_l = cos((2l+1) pi / 2N)`. Integrals
//! of `ln|z - t| h(t)` are computed by interpolating `h` at the nodes and
//! integrating the interpolant exactly with the closed forms
//!
//! ```text
//! int ln|z - t| T_0(t) dt/sqrt(1-t^2) = -pi ln|2 w|
//! int ln|z - t| T_j(t) dt/sqrt(1-t^2) = -(pi/j) Re(w^j),   j >= 1
//! ```
//!
//! where `z = (w + 1/w)/2` and `|w| <= 1`. For `z = s` on the interval this is
//! `-pi ln 2` and `-(pi/j) T_j(s)`.

use num_complex::Complex;

use crate::scalar::Real;

#[derive(Debug, Clone)]
pub(crate) struct ChebGrid<T> {
    n: usize,
    nodes: Vec<T>,
    /// `cos(m pi / 2N)` for `m` in `0..4N`.
    cos_table: Vec<T>,
}

impl<T: Real> ChebGrid<T> {
    pub fn new(n: usize) -> Self {
        let four_n = 4 * n;
        let step = T::PI() / T::from_usize_lossy(2 * n);
        let cos_table: Vec<T> = (0..four_n).map(|m| (step * T::from_usize_lossy(m)).cos()).collect();
        let nodes = (0..n).map(|l| cos_table[2 * l + 1]).collect();
        Self { n, nodes, cos_table }
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    /// `T_j(t_l)`.
    #[inline]
    pub fn cheb(&self, j: usize, l: usize) -> T {
        self.cos_table[(j * (2 * l + 1)) % (4 * self.n)]
    }

    /// `g(m) = sum_{j=1}^{N-1} cos(j m pi / N) / j` for `m` in `0..=2N`.
    fn log_kernel_sums(&self) -> Vec<T> {
        let four_n = 4 * self.n;
        (0..=2 * self.n)
            .map(|m| {
                let mut acc = T::zero();
                for j in 1..self.n {
                    acc += self.cos_table[(2 * j * m) % four_n] / T::from_usize_lossy(j);
                }
                acc
            })
            .collect()
    }

    /// Product-integration weights for `int ln|s - t| h(t) dmu(t)` at the
    /// grid's own nodes: `W[q][l]` with `s = t_q`. Symmetric in `(q, l)`.
    pub fn on_node_log_weights(&self) -> OnNodeLogWeights<T> {
        OnNodeLogWeights { g: self.log_kernel_sums(), n: self.n }
    }

    /// Coefficients `c_j` of the degree `N-1` interpolant of the samples.
    pub fn coefficients(&self, samples: &[Complex<T>]) -> Vec<Complex<T>> {
        debug_assert_eq!(samples.len(), self.n);
        let scale = T::lit(2.0) / T::from_usize_lossy(self.n);
        let mut out: Vec<Complex<T>> = (0..self.n)
            .map(|j| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (l, h) in samples.iter().enumerate() {
                    acc += *h * self.cheb(j, l);
                }
                acc * scale
            })
            .collect();
        out[0] = out[0] * T::lit(0.5);
        out
    }

    /// `sum_m a_m T_m(t_l)` at every node.
    pub fn synthesize(&self, coeffs: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.n)
            .map(|l| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (m, a) in coeffs.iter().enumerate() {
                    acc += *a * self.cheb(m, l);
                }
                acc
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct OnNodeLogWeights<T> {
    g: Vec<T>,
    n: usize,
}

impl<T: Real> OnNodeLogWeights<T> {
    #[inline]
    pub fn weight(&self, q: usize, l: usize) -> T {
        let diff = q.abs_diff(l);
        -(T::PI() / T::from_usize_lossy(self.n)) * (T::LN_2() + self.g[diff] + self.g[q + l + 1])
    }
}

/// `int ln|z - t| T_j(t) dt / sqrt(1 - t^2)` for `j` in `0..count`.
pub(crate) fn log_moments<T: Real>(z: Complex<T>, count: usize) -> Vec<T> {
    let one = Complex::new(T::one(), T::zero());
    let root = (z * z - one).sqrt();
    let mut w = z - root;
    if w.norm() > T::one() {
        w = z + root;
    }
    let mut out = Vec::with_capacity(count);
    out.push(-T::PI() * (w * T::lit(2.0)).norm().ln());
    let mut power = one;
    for j in 1..count {
        power = power * w;
        out.push(-T::PI() / T::from_usize_lossy(j) * power.re);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_on_interval_reduce_to_chebyshev() {
        let s = 0.3f64;
        let m = log_moments(Complex::new(s, 0.0), 6);
        assert!((m[0] + std::f64::consts::PI * 2f64.ln()).abs() < 1e-14);
        let theta = s.acos();
        for (j, v) in m.iter().enumerate().skip(1) {
            let expect = -std::f64::consts::PI / j as f64 * (j as f64 * theta).cos();
            assert!((v - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn log_moment_zero_by_quadrature() {
        // int ln|z - cos u| du over [0, pi] for z = 1.5 + 0.5i by composite
        // midpoint rule; smooth integrand since z is off the interval.
        let z = Complex::new(1.5f64, 0.5);
        let n = 200_000;
        let h = std::f64::consts::PI / n as f64;
        let mut acc0 = 0.0;
        let mut acc3 = 0.0;
        for i in 0..n {
            let u = (i as f64 + 0.5) * h;
            let v = (z - u.cos()).norm().ln();
            acc0 += v * h;
            acc3 += v * (3.0 * u).cos() * h;
        }
        let m = log_moments(z, 4);
        assert!((m[0] - acc0).abs() < 1e-9);
        assert!((m[3] - acc3).abs() < 1e-9);
    }

    #[test]
    fn on_node_weights_integrate_polynomials_exactly() {
        let grid = ChebGrid::<f64>::new(16);
        let w = grid.on_node_log_weights();
        // h = T_3: int ln|s - t| T_3 dmu = -(pi/3) T_3(s)
        for q in 0..16 {
            let s = grid.nodes()[q];
            let approx: f64 = (0..16).map(|l| w.weight(q, l) * grid.cheb(3, l)).sum();
            let exact = -std::f64::consts::PI / 3.0 * (3.0 * s.acos()).cos();
            assert!((approx - exact).abs() < 1e-13);
            assert_eq!(w.weight(q, 5), w.weight(5, q));
        }
    }

    #[test]
    fn coefficients_invert_synthesis() {
        let grid = ChebGrid::<f64>::new(12);
        let a: Vec<Complex<f64>> = (0..12).map(|m| Complex::new(1.0 / (m + 1) as f64, m as f64 * 0.1)).collect();
        let samples = grid.synthesize(&a);
        let back = grid.coefficients(&samples);
        for (x, y) in a.iter().zip(&back) {
            assert!((x - y).norm() < 1e-13);
        }
    }
}
