mod common;

use common::oracle;
use coupling_modes::dtn::{dtn_coeff, dtn_limit_gap, quadratic_form_real};
use num_complex::Complex;
use proptest::prelude::*;

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp()).collect()
}

#[test]
fn nonpositive_real_part_on_grid() {
    for k in log_grid(1e-3, 1e2, 50) {
        for n in -60..=60 {
            let v = dtn_coeff(n, k).unwrap().value;
            assert!(v.re <= 0.0, "n={n} k={k} {v}");
            assert!(v.re.is_finite() && v.im.is_finite());
        }
    }
}

#[test]
fn uniform_static_limit() {
    let sup = |k: f64| {
        (1..=60)
            .flat_map(|n| [n, -n])
            .map(|n: i64| (dtn_coeff(n, k).unwrap().value / -(n.abs() as f64) - 1.0).norm())
            .fold(0.0, f64::max)
    };
    let values: Vec<f64> = [1e-1, 1e-2, 1e-3, 1e-4].iter().map(|&k| sup(k)).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
    assert!(values[3] <= 1e-2);
}

#[test]
fn limit_gap_refines() {
    assert!(dtn_limit_gap(3, 1e-3).unwrap() < dtn_limit_gap(3, 1e-2).unwrap());
    assert_eq!(dtn_limit_gap(-3, 0.7).unwrap(), dtn_limit_gap(3, 0.7).unwrap());
}

#[test]
fn high_order_matches_series_oracle() {
    // lambda_50(1) = H'_50/H_50 with H' = -H_51 + 50 H_50
    let h = |n: i64| Complex::new(oracle::bessel_j(n, 1.0), oracle::bessel_y(n, 1.0));
    let expect = (-h(51) + h(50) * 50.0) / h(50);
    let v = dtn_coeff(50, 1.0).unwrap().value;
    assert!((v - expect).norm() <= 1e-10 * expect.norm());
    assert!((v / -50.0 - 1.0).norm() <= 0.05);
}

#[test]
fn second_differences_are_stable() {
    let ks: Vec<f64> = (0..40).map(|i| 0.2 + 0.1 * i as f64).collect();
    for n in [0i64, 1, 5, 20] {
        let d2 = |h: f64| {
            ks.iter()
                .map(|&k| {
                    let f = |x: f64| dtn_coeff(n, x).unwrap().value;
                    ((f(k + h) - f(k) * 2.0 + f(k - h)) / (h * h)).norm()
                })
                .fold(0.0, f64::max)
        };
        let (a, b) = (d2(1e-2), d2(5e-3));
        assert!(a.is_finite() && b.is_finite());
        let ratio = a / b;
        assert!((0.5..=2.0).contains(&ratio), "n={n}: {a} vs {b}");
    }
}

proptest! {
    #[test]
    fn sign_and_parity(n in -512i64..=512, log_k in -3.0f64..2.0) {
        let k = 10f64.powf(log_k);
        let v = dtn_coeff(n, k).unwrap().value;
        prop_assert!(v.re <= 0.0);
        prop_assert_eq!(v, dtn_coeff(-n, k).unwrap().value);
    }

    #[test]
    fn quadratic_form_nonpositive(
        amps in prop::collection::vec((-60i64..=60, -10.0f64..10.0, -10.0f64..10.0), 0..40),
        log_k in -3.0f64..2.0,
    ) {
        let modes: Vec<_> = amps.iter().map(|&(n, a, b)| (n, Complex::new(a, b))).collect();
        prop_assert!(quadratic_form_real(&modes, 10f64.powf(log_k)).unwrap() <= 0.0);
    }
}
