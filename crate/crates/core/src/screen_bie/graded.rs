//! Independent low-order discretization used to cross-check the spectral flux.
//!
//! Piecewise-constant density on a mesh graded cubically toward both
//! endpoints, collocated at panel midpoints. The `ln|x - y|` part of the kernel
//! is integrated exactly over each panel; the bounded remainder
//! `(i/4) H_0(k r) + ln(r)/(2 pi)` by Gauss-Legendre. The density is even, so
//! only the left half of the collocation points is kept and mirrored columns
//! are folded together.

use num_complex::Complex;

use super::lu::ComplexLu;
use super::{FluxValue, KernelSplit};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MIN_PANELS: usize = 16;
pub const MAX_PANELS: usize = 8192;

/// Grading exponent toward the endpoints.
const GRADING: i32 = 3;

/// Panels whose centre lies within this many panel widths of the collocation
/// point get the 4-point rule, others the 2-point rule.
const NEAR_WIDTHS: f64 = 4.0;

const GL4_X: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL4_W: [f64; 4] = [
    0.347_854_845_137_453_9,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_9,
];
const GL2_X: f64 = 0.577_350_269_189_625_8;

/// Breakpoints `x_0 < ... < x_N` of the graded mesh on `[-1/2, 1/2]`.
pub fn graded_mesh<T: Real>(panels: usize) -> Vec<T> {
    let half = T::lit(0.5);
    (0..=panels)
        .map(|j| {
            if 2 * j == panels {
                return T::zero();
            }
            let u = T::lit(2.0) * T::from_usize_lossy(j) / T::from_usize_lossy(panels) - T::one();
            let x = half * (T::one() - (T::one() - u.abs()).powi(GRADING));
            if u < T::zero() {
                -x
            } else {
                x
            }
        })
        .collect()
}

/// `int_a^b ln|x - y| dy` in closed form.
fn log_panel<T: Real>(x: T, a: T, b: T) -> T {
    let prim = |z: T| {
        if z == T::zero() {
            T::zero()
        } else {
            z * z.abs().ln() - z
        }
    };
    prim(x - a) - prim(x - b)
}

/// Flux of the graded-mesh Nystrom solution with `panels` panels.
pub fn solve_density_oracle<T: Real>(k: T, panels: usize) -> Result<FluxValue<T>> {
    if !(MIN_PANELS..=MAX_PANELS).contains(&panels) || panels % 2 == 1 {
        return Err(Error::PanelCountOutOfRange { value: panels, min: MIN_PANELS, max: MAX_PANELS });
    }
    let kf = k.to_f64_lossy();
    if !(kf >= crate::specfun::MIN_ARGUMENT && kf <= super::MAX_WAVENUMBER) {
        return Err(Error::ArgumentOutOfRange {
            value: kf,
            min: crate::specfun::MIN_ARGUMENT,
            max: super::MAX_WAVENUMBER,
        });
    }
    let mesh = graded_mesh::<T>(panels);
    let half = panels / 2;
    let kernel = KernelSplit::new(k);
    let two_pi = T::lit(2.0) * T::PI();
    let centres: Vec<T> = (0..panels).map(|j| (mesh[j] + mesh[j + 1]) * T::lit(0.5)).collect();
    let widths: Vec<T> = (0..panels).map(|j| mesh[j + 1] - mesh[j]).collect();

    // (i/4) H_0(k r) + ln(r)/(2 pi) = R_k(r) + ln(r) (1 - J_0(k r)) / (2 pi)
    let remainder = |r: T| {
        let (j0, rem) = kernel.physical_remainder(r);
        rem + Complex::from(r.ln() * (T::one() - j0) / two_pi)
    };

    let mut matrix = vec![Complex::new(T::zero(), T::zero()); half * half];
    let mut row = vec![Complex::new(T::zero(), T::zero()); panels];
    for i in 0..half {
        let x = centres[i];
        for j in 0..panels {
            let (a, b, c, h) = (mesh[j], mesh[j + 1], centres[j], widths[j]);
            let mut acc = Complex::from(-log_panel(x, a, b) / two_pi);
            let near = (x - c).abs() < T::lit(NEAR_WIDTHS) * h;
            if near {
                for (gx, gw) in GL4_X.iter().zip(GL4_W) {
                    let y = c + T::lit(*gx) * h * T::lit(0.5);
                    acc += remainder((x - y).abs()) * (T::lit(gw) * h * T::lit(0.5));
                }
            } else {
                for s in [-GL2_X, GL2_X] {
                    let y = c + T::lit(s) * h * T::lit(0.5);
                    acc += remainder((x - y).abs()) * (h * T::lit(0.5));
                }
            }
            row[j] = acc;
        }
        for j in 0..half {
            matrix[i * half + j] = row[j] + row[panels - 1 - j];
        }
    }

    let lu = ComplexLu::factor(half, &matrix).map_err(|s| Error::SingularSystem { k: kf, column: s.0 })?;
    let rhs = vec![Complex::from(T::lit(0.5)); half];
    let density = lu.solve(&rhs);
    let mut flux = Complex::new(T::zero(), T::zero());
    for (f, h) in density.iter().zip(&widths[..half]) {
        flux += *f * *h;
    }
    flux = flux * T::lit(2.0);
    if !(flux.re.is_finite() && flux.im.is_finite()) {
        return Err(Error::NonFinite(format!("oracle flux at k = {kf}")));
    }
    Ok(FluxValue { k, flux })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_is_symmetric_and_graded() {
        let m = graded_mesh::<f64>(32);
        assert_eq!(m[0], -0.5);
        assert_eq!(m[32], 0.5);
        for j in 0..=32 {
            assert!((m[j] + m[32 - j]).abs() < 1e-15);
        }
        assert!(m[1] - m[0] < (m[17] - m[16]) / 10.0);
    }

    #[test]
    fn panel_log_integral_matches_midpoint_sum() {
        let (x, a, b) = (0.8f64, -0.1, 0.3);
        let n = 100_000;
        let h = (b - a) / n as f64;
        let s: f64 = (0..n).map(|i| (x - (a + (i as f64 + 0.5) * h)).abs().ln() * h).sum();
        assert!((log_panel(x, a, b) - s).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_panel_counts() {
        assert!(solve_density_oracle(1.0f64, 8).is_err());
        assert!(solve_density_oracle(1.0f64, 16385).is_err());
        assert!(solve_density_oracle(1.0f64, 33).is_err());
    }

    #[test]
    fn coarse_oracle_is_close_to_spectral() {
        let spectral = super::super::solve_density(2.0f64, 32).unwrap().flux().flux;
        let oracle = solve_density_oracle(2.0f64, 256).unwrap().flux;
        assert!((oracle - spectral).norm() / spectral.norm() < 1e-3);
    }
}
