//! Reference values computed independently at 30 significant digits.

use alpha_harmonic::bounds::{l1_mean_kernel, m2_bound, m_bound, schwarz_bound, schwarz_pick_bound};
use alpha_harmonic::kernel::DiskPoint;
use alpha_harmonic::quadrature::{modulus_power_integral, ratio_integral_series, QuadratureConfig, RATIO_SERIES_MAX_TERMS};
use alpha_harmonic::specfun::{c_alpha, hyp2f1, Alpha, HypergeomParams};

fn close(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol * want.abs(), "got {got}, want {want}");
}

fn alpha(a: f64) -> Alpha<f64> {
    Alpha::new(a).unwrap()
}

fn f21(a: f64, b: f64, c: f64, x: f64) -> f64 {
    hyp2f1(HypergeomParams::new(a, b, c).unwrap(), x).unwrap()
}

#[test]
fn hypergeometric_values() {
    close(f21(1.0, 1.0, 2.0, 0.5), 1.386_294_361_119_890_6, 1e-13);
    close(f21(0.25, 0.75, 1.5, 0.9), 1.232_677_513_908_611_8, 1e-12);
    close(f21(0.5, 1.5, 0.25, 0.8), 32.196_221_042_939_108, 1e-11);
    close(f21(-2.5, -2.5, 1.0, 0.9), 9.544_946_669_835_233_7, 1e-11);
}

#[test]
fn c_alpha_values() {
    close(c_alpha(alpha(1.0)), std::f64::consts::FRAC_PI_4, 1e-13);
    close(c_alpha(alpha(-0.5)), 0.847_213_084_793_979_09, 1e-13);
}

#[test]
fn bound_values() {
    close(m2_bound(0.99, alpha(1.0)).unwrap(), 2.026_803_730_375_240_3, 1e-12);
    close(m_bound(0.99, alpha(1.0)).unwrap(), 1.286_624_861_328_574_3, 1e-12);
    close(m_bound(0.5, alpha(-0.5)).unwrap(), 0.808_864_851_338_269_86, 1e-12);
    close(schwarz_pick_bound(0.5, alpha(-0.5)).unwrap(), 2.713_090_126_922_549_4, 1e-12);
    close(schwarz_bound(0.9, alpha(1.0)).unwrap(), 1.216_000_914_109_794_6, 1e-12);
}

#[test]
fn trigonometric_integrals() {
    let s = ratio_integral_series(0.3, 0.6, 1.0, 2.0, RATIO_SERIES_MAX_TERMS).unwrap();
    close(s.value, 1.601_562_5, 1e-13);
    close(modulus_power_integral(DiskPoint::new(0.7, 0.0).unwrap(), 1.5).unwrap(), 4.332_290_148_354_367_2, 1e-12);
}

#[test]
fn l1_mean_values() {
    let cfg = QuadratureConfig::default();
    close(l1_mean_kernel(alpha(1.0), 0.9, &cfg).unwrap(), 1.216_000_914_109_794_6, 1e-10);
    close(l1_mean_kernel(alpha(-0.5), 0.99, &cfg).unwrap(), 1.144_977_615_957_835_4, 1e-10);
}
