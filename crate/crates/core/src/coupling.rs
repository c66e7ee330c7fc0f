//! The coupling gap `F(k) = q(k^2) + p(k^2) Re I(k)` and its roots.
//!
//! `p(t) = C1 t - C2` and `q(t) = t (C3 t + C4)` carry the building
//! constants; `I(k)` is the flux of the lower trace of the ground
//! displacement, computed by [`crate::screen_bie`].

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::screen_bie;
use crate::specfun;

/// Nondimensional building constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CityConstants<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
    pub c4: T,
}

/// Sign pattern of the constants, which decides the qualitative root picture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRegime {
    /// All four constants positive: `F < 0` near zero and `F > 0` at infinity.
    AllPositive,
    /// `C3 < 0`: existence depends on the balance with the other constants.
    NegativeC3,
    /// Anything else.
    Other,
}

impl<T: Real> Default for CityConstants<T> {
    fn default() -> Self {
        Self {
            c1: T::lit(0.4),
            c2: T::lit(2.0) / T::lit(3.0),
            c3: T::lit(5.0) / T::lit(12.0),
            c4: T::lit(5.0) / T::lit(48.0),
        }
    }
}

impl<T: Real> CityConstants<T> {
    pub fn new(c1: T, c2: T, c3: T, c4: T) -> Self {
        Self { c1, c2, c3, c4 }
    }

    pub fn regime(&self) -> SignRegime {
        let z = T::zero();
        if self.c1 > z && self.c2 > z && self.c3 > z && self.c4 > z {
            SignRegime::AllPositive
        } else if self.c3 < z {
            SignRegime::NegativeC3
        } else {
            SignRegime::Other
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.c1, self.c2, self.c3, self.c4].iter().all(|c| c.is_finite())
    }
}

pub fn p_eval<T: Real>(t: T, c: &CityConstants<T>) -> T {
    c.c1 * t - c.c2
}

pub fn q_eval<T: Real>(t: T, c: &CityConstants<T>) -> T {
    t * (c.c3 * t + c.c4)
}

/// `(k, I(k), F(k))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSample<T> {
    pub k: T,
    pub flux: Complex<T>,
    pub gap: T,
}

/// A refined root of `F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingMode<T> {
    pub k_root: T,
    /// Scan nodes enclosing the root; `F` has opposite signs (or vanishes) there.
    pub bracket: (T, T),
    /// `|F(k_root)|`.
    pub residual: T,
    pub iterations: usize,
    /// Set when another root lies within one grid spacing.
    pub close_to_neighbor: bool,
}

/// `F` from the lower-trace flux.
pub fn gap_from_flux<T: Real>(k: T, flux: Complex<T>, c: &CityConstants<T>) -> T {
    let t = k * k;
    q_eval(t, c) + p_eval(t, c) * flux.re
}

/// `F` written against the upper-trace flux `int dPhi/dx2 = -I(k)`.
pub fn gap_from_upper_flux<T: Real>(k: T, upper_flux: Complex<T>, c: &CityConstants<T>) -> T {
    let t = k * k;
    q_eval(t, c) - p_eval(t, c) * upper_flux.re
}

/// Truncation used by scans: `max(32, ceil(4k))`.
pub fn auto_truncation<T: Real>(k: T) -> usize {
    let by_k = (T::lit(4.0) * k).ceil().to_f64_lossy() as usize;
    by_k.max(32)
}

pub fn coupling_gap<T: Real>(k: T, c: &CityConstants<T>, truncation: usize) -> Result<CouplingSample<T>> {
    let density = screen_bie::solve_density(k, truncation)?;
    let flux = density.flux().flux;
    Ok(CouplingSample { k, flux, gap: gap_from_flux(k, flux, c) })
}

/// `pi k H_1(k) / H_0(k)`, the small-`k` equivalent of the flux.
pub fn low_freq_model<T: Real>(k: T) -> Result<Complex<T>> {
    Ok(specfun::hankel_ratio_1_0(k)? * (T::PI() * k))
}

/// `-i k`, the large-`k` equivalent of the flux.
pub fn high_freq_model<T: Real>(k: T) -> Complex<T> {
    Complex::new(T::zero(), -k)
}

/// `C2 pi / ln k`, the small-`k` equivalent of `F`.
pub fn gap_low_model<T: Real>(k: T, c: &CityConstants<T>) -> T {
    c.c2 * T::PI() / k.ln()
}

/// `C3 k^4`, the large-`k` equivalent of `F`.
pub fn gap_high_model<T: Real>(k: T, c: &CityConstants<T>) -> T {
    c.c3 * k.powi(4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    Linear,
    #[default]
    Log,
}

/// Grid nodes from `k_lo` to `k_hi` inclusive.
pub fn grid<T: Real>(k_lo: T, k_hi: T, points: usize, spacing: Spacing) -> Result<Vec<T>> {
    if !(k_lo > T::zero() && k_hi > k_lo && k_hi.is_finite()) {
        return Err(Error::InvalidRange(format!(
            "need 0 < k_lo < k_hi, got [{}, {}]",
            k_lo.to_f64_lossy(),
            k_hi.to_f64_lossy()
        )));
    }
    if points < 2 {
        return Err(Error::InvalidRange(format!("need at least 2 points, got {points}")));
    }
    let last = T::from_usize_lossy(points - 1);
    Ok((0..points)
        .map(|i| {
            if i == 0 {
                return k_lo;
            }
            if i == points - 1 {
                return k_hi;
            }
            let s = T::from_usize_lossy(i) / last;
            match spacing {
                Spacing::Linear => k_lo + (k_hi - k_lo) * s,
                Spacing::Log => (k_lo.ln() + (k_hi.ln() - k_lo.ln()) * s).exp(),
            }
        })
        .collect())
}

/// Evaluates `F` on a grid with `M = max(32, ceil(4k))`.
pub fn scan<T: Real>(
    c: &CityConstants<T>,
    k_lo: T,
    k_hi: T,
    points: usize,
    spacing: Spacing,
) -> Result<Vec<CouplingSample<T>>> {
    scan_with_truncation(c, k_lo, k_hi, points, spacing, None)
}

/// As [`scan`], with a fixed truncation when `truncation` is given.
pub fn scan_with_truncation<T: Real>(
    c: &CityConstants<T>,
    k_lo: T,
    k_hi: T,
    points: usize,
    spacing: Spacing,
    truncation: Option<usize>,
) -> Result<Vec<CouplingSample<T>>> {
    let ks = grid(k_lo, k_hi, points, spacing)?;
    ks.par_iter()
        .map(|&k| coupling_gap(k, c, truncation.unwrap_or_else(|| auto_truncation(k))))
        .collect()
}

/// Relative tolerance on `k` for root refinement.
pub const ROOT_K_TOL: f64 = 1e-12;
/// Residual tolerance, scaled by `max(1, |q(k^2)|)`.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-8;
const MAX_ITERATIONS: usize = 200;

fn opposite<T: Real>(a: T, b: T) -> bool {
    (a < T::zero() && b > T::zero()) || (a > T::zero() && b < T::zero())
}

/// Refines every sign change of `F` between adjacent samples.
pub fn find_modes<T: Real>(samples: &[CouplingSample<T>], c: &CityConstants<T>) -> Result<Vec<CouplingMode<T>>> {
    find_modes_with_truncation(samples, c, None)
}

/// As [`find_modes`]; inside each bracket `F` is evaluated at one fixed
/// truncation (the override, or the scan rule at the bracket's upper end).
pub fn find_modes_with_truncation<T: Real>(
    samples: &[CouplingSample<T>],
    c: &CityConstants<T>,
    truncation: Option<usize>,
) -> Result<Vec<CouplingMode<T>>> {
    let mut modes: Vec<CouplingMode<T>> = Vec::new();
    let mut spacings: Vec<T> = Vec::new();
    if let Some(first) = samples.first() {
        if first.gap == T::zero() {
            modes.push(CouplingMode {
                k_root: first.k,
                bracket: (first.k, first.k),
                residual: T::zero(),
                iterations: 0,
                close_to_neighbor: false,
            });
            let next = samples.get(1).map_or(T::zero(), |s| s.k - first.k);
            spacings.push(next);
        }
    }
    for pair in samples.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let mode = if b.gap == T::zero() {
            CouplingMode { k_root: b.k, bracket: (a.k, b.k), residual: T::zero(), iterations: 0, close_to_neighbor: false }
        } else if opposite(a.gap, b.gap) {
            let m = truncation.unwrap_or_else(|| auto_truncation(b.k));
            refine(a, b, c, m)?
        } else {
            continue;
        };
        modes.push(mode);
        spacings.push(b.k - a.k);
    }
    for i in 1..modes.len() {
        let resolution = spacings[i].max(spacings[i - 1]);
        if modes[i].k_root - modes[i - 1].k_root < resolution {
            modes[i].close_to_neighbor = true;
            modes[i - 1].close_to_neighbor = true;
        }
    }
    Ok(modes)
}

/// Bracketing bisection with secant steps that are accepted only when they
/// land inside the bracket and the previous step shrank it by at least half.
fn refine<T: Real>(
    a: CouplingSample<T>,
    b: CouplingSample<T>,
    c: &CityConstants<T>,
    truncation: usize,
) -> Result<CouplingMode<T>> {
    let eval = |k: T| -> Result<T> { Ok(coupling_gap(k, c, truncation)?.gap) };
    let (mut lo, mut hi) = (a.k, b.k);
    // End values are recomputed at the bracket's fixed truncation.
    let (mut f_lo, mut f_hi) = (eval(lo)?, eval(hi)?);
    if !opposite(f_lo, f_hi) {
        // The truncation change moved a marginal sign change; fall back to the
        // scan values, which still bracket a root of the scan's own F.
        f_lo = a.gap;
        f_hi = b.gap;
    }
    let tol_k = T::lit(ROOT_K_TOL);
    let tol_f = T::lit(ROOT_RESIDUAL_TOL);
    let half = T::lit(0.5);
    let mut best = if f_lo.abs() < f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
    let mut iterations = 0;
    let mut width_before = hi - lo;
    let mut force_bisect = false;
    while iterations < MAX_ITERATIONS {
        let scale = T::one().max(q_eval(best.0 * best.0, c).abs());
        if best.1.abs() <= tol_f * scale || hi - lo <= tol_k * (lo + hi) * half {
            break;
        }
        let mid = (lo + hi) * half;
        let secant = hi - f_hi * (hi - lo) / (f_hi - f_lo);
        let x = if !force_bisect && secant > lo && secant < hi && secant.is_finite() { secant } else { mid };
        let fx = eval(x)?;
        iterations += 1;
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == T::zero() {
            lo = x;
            hi = x;
            break;
        }
        if opposite(f_lo, fx) {
            hi = x;
            f_hi = fx;
        } else {
            lo = x;
            f_lo = fx;
        }
        let width = hi - lo;
        force_bisect = width > width_before * half;
        width_before = width;
    }
    let _ = (lo, hi);
    Ok(CouplingMode {
        k_root: best.0,
        bracket: (a.k, b.k),
        residual: best.1.abs(),
        iterations,
        close_to_neighbor: false,
    })
}

/// Number of sign changes between adjacent samples.
pub fn sign_changes<T: Real>(samples: &[CouplingSample<T>]) -> usize {
    samples.windows(2).filter(|w| opposite(w[0].gap, w[1].gap) || w[1].gap == T::zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> CityConstants<f64> {
        CityConstants::default()
    }

    #[test]
    fn polynomials() {
        let c = defaults();
        assert_eq!(q_eval(0.0, &c), 0.0);
        assert!((p_eval(0.0, &c) + 2.0 / 3.0).abs() < 1e-16);
        assert!((q_eval(1.0, &c) - 25.0 / 48.0).abs() < 1e-16);
        assert_eq!(c.regime(), SignRegime::AllPositive);
        assert_eq!(CityConstants::new(0.4, 2.0 / 3.0, -1e3, 5.0 / 48.0).regime(), SignRegime::NegativeC3);
    }

    #[test]
    fn decoupled_constants_ignore_flux() {
        let c = CityConstants::new(0.0, 0.0, 1.0, 0.0);
        let s = coupling_gap(1.0, &c, 32).unwrap();
        assert_eq!(s.gap, 1.0);
    }

    #[test]
    fn gap_sign_at_the_ends() {
        let c = defaults();
        assert!(coupling_gap(1e-3, &c, 32).unwrap().gap < 0.0);
        let s = coupling_gap(10.0, &c, 40).unwrap();
        assert!(s.gap > 0.0);
        assert!((s.gap / gap_high_model(10.0, &c) - 1.0).abs() <= 0.25);
    }

    #[test]
    fn both_orientations_agree() {
        let c = defaults();
        for k in [1e-3, 0.3, 2.0, 9.0] {
            let s = coupling_gap(k, &c, auto_truncation(k)).unwrap();
            let other = gap_from_upper_flux(k, -s.flux, &c);
            assert!((s.gap - other).abs() <= 1e-14 * s.gap.abs().max(1e-300));
            assert_eq!(s.gap, gap_from_flux(k, s.flux, &c));
        }
    }

    #[test]
    fn models() {
        let k = 1e-3f64;
        let low = low_freq_model(k).unwrap();
        assert!((low.re / (-std::f64::consts::PI / k.ln()) - 1.0).abs() <= 0.15);
        let high = high_freq_model(7.0f64);
        assert_eq!(high, Complex::new(0.0, -7.0));
    }

    #[test]
    fn grids() {
        let g = grid(1e-3f64, 5.0, 200, Spacing::Log).unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[199], 5.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let l = grid(1.0f64, 2.0, 3, Spacing::Linear).unwrap();
        assert_eq!(l, vec![1.0, 1.5, 2.0]);
        assert!(grid(2.0f64, 1.0, 3, Spacing::Log).is_err());
        assert!(grid(0.0f64, 1.0, 3, Spacing::Log).is_err());
        assert!(grid(1.0f64, 2.0, 1, Spacing::Log).is_err());
    }

    #[test]
    fn empty_samples_give_no_modes() {
        assert!(find_modes::<f64>(&[], &defaults()).unwrap().is_empty());
    }

    #[test]
    fn polynomial_gap_root_is_one() {
        let c = CityConstants::new(0.0f64, 0.0, 1.0, -1.0);
        let samples = scan(&c, 0.5, 1.7, 7, Spacing::Linear).unwrap();
        let modes = find_modes(&samples, &c).unwrap();
        assert_eq!(modes.len(), 1);
        assert!((modes[0].k_root - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn close_roots_are_flagged() {
        // F = (k^2 - 1)^2 - eps has roots near 1 on both sides, within one
        // spacing of each other on a coarse grid.
        let c = CityConstants::new(0.0, 0.0, 1.0, -1.0);
        let mk = |k: f64, gap: f64| CouplingSample { k, flux: Complex::new(0.0, 0.0), gap };
        let samples = vec![mk(0.9, -1.0), mk(1.0, 1.0), mk(1.1, -1.0)];
        let modes = find_modes_with_truncation(&samples, &c, Some(8)).unwrap();
        assert_eq!(modes.len(), 2);
        assert!(modes.iter().all(|m| m.close_to_neighbor));
    }
}
