use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex;
use rand::Rng;

use super::{aggregate, trial_rng, within, CheckId, Outcome, TrialOutcomes, TrialReport, TrialSpec};
use crate::error::Result;
use crate::kernel::DiskPoint;
use crate::quadrature::{
    cos_power_integral, integrate_periodic, modulus_power_integral, ratio_integral_series, QuadratureConfig,
    RATIO_SERIES_MAX_TERMS,
};
use crate::specfun::{
    c_alpha, euler_transform_eval, gamma, hyp2f1_at_one, hyp2f1_raw, hyp2f1_with, inv_c_alpha_closed_form,
    quadratic_transform_eval, Alpha, HypergeomParams, SeriesSettings,
};
use rayon::prelude::*;

const IDS: [CheckId; 9] = [
    CheckId::RatioSeries,
    CheckId::ModulusPower,
    CheckId::CosPower,
    CheckId::GaussLimit,
    CheckId::Euler,
    CheckId::Quadratic,
    CheckId::Duplication,
    CheckId::InvCAlpha,
    CheckId::InvCBelowPow2,
];

const QUADRATURE_TOL: f64 = 1e-8;
const MODULUS_TOL: f64 = 1e-9;
const TRANSFORM_TOL: f64 = 1e-10;
const EXACT_TOL: f64 = 1e-12;
const GAUSS_DELTAS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let nf = n as f64;
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                if n == 1 {
                    p0 = 1.0;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

fn rel_err(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

/// `(err, tol)` under the identity convention: violated whenever `err > tol`.
fn identity(id: CheckId, r: Result<f64>, tol: f64, ctx: String) -> (CheckId, Outcome) {
    match r {
        Ok(err) => within(id, err, tol, 0.0, &ctx),
        Err(_) => (id, Outcome::Inconclusive),
    }
}

fn ratio_series_err(a: f64, b: f64, alpha: f64, beta: f64, config: &QuadratureConfig<f64>) -> Result<f64> {
    let series = ratio_integral_series(a, b, alpha, beta, RATIO_SERIES_MAX_TERMS)?;
    let quad = integrate_periodic(|t: f64| (1.0 - a * t.cos()).powf(alpha) / (1.0 - b * t.cos()).powf(beta), config)?
        .require_converged()?;
    Ok(rel_err(series.value, quad))
}

fn modulus_err(z: Complex<f64>, beta: f64, config: &QuadratureConfig<f64>) -> Result<f64> {
    let closed = modulus_power_integral(DiskPoint::from_complex(z)?, beta)?;
    let quad = integrate_periodic(
        |t: f64| (Complex::new(1.0, 0.0) - z * Complex::from_polar(1.0, t)).norm_sqr().powf(-beta),
        config,
    )?
    .require_converged()?;
    Ok(rel_err(closed, quad))
}

fn gauss_settings() -> SeriesSettings {
    SeriesSettings { term_cap: 10_000_000, ..SeriesSettings::default() }
}

/// Gaps `F(1) - F(1-δ)` for the decreasing `δ` of [`GAUSS_DELTAS`].
fn gauss_gaps(params: HypergeomParams<f64>) -> Result<Vec<f64>> {
    let at_one = hyp2f1_at_one(params)?;
    let settings = gauss_settings();
    GAUSS_DELTAS.iter().map(|&d| Ok(at_one - hyp2f1_with(params, 1.0 - d, &settings)?.value)).collect()
}

fn gauss_checks(a: f64, b: f64, e: f64, out: &mut TrialOutcomes) {
    let ctx = format!("a={a} b={b} c={}", a + b + e);
    let gaps = HypergeomParams::new(a, b, a + b + e).and_then(gauss_gaps);
    let Ok(gaps) = gaps else {
        out.push((CheckId::GaussLimit, Outcome::Inconclusive));
        return;
    };
    // positive parameters: every term is positive, so the gap shrinks strictly
    for w in gaps.windows(2) {
        out.push(within(CheckId::GaussLimit, w[1], w[0], 0.0, &ctx));
    }
    out.push(within(CheckId::GaussLimit, -gaps[gaps.len() - 1], 0.0, 0.0, &ctx));
    // and at the rate (1-x)^{min(c-a-b, 1)} up to a log factor
    let span = GAUSS_DELTAS[GAUSS_DELTAS.len() - 1] / GAUSS_DELTAS[0];
    let predicted = 10.0 * gaps[0] * span.powf(e.min(1.0));
    out.push(within(CheckId::GaussLimit, gaps[gaps.len() - 1], predicted, 0.0, &ctx));
}

fn euler_err(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let params = HypergeomParams::new(a, b, c)?;
    let raw = hyp2f1_raw(params, x, &SeriesSettings { allow_euler: false, ..SeriesSettings::default() })?;
    Ok(rel_err(euler_transform_eval(params, x)?, raw.value))
}

fn quadratic_err(a: f64, c: f64, x: f64) -> Result<f64> {
    let params = HypergeomParams::new(a, a + 0.5, c)?;
    let raw = hyp2f1_raw(params, x, &SeriesSettings { allow_euler: false, ..SeriesSettings::default() })?;
    Ok(rel_err(quadratic_transform_eval(a, c, x)?, raw.value))
}

fn duplication_err(x: f64) -> Result<f64> {
    let rhs = 2f64.powf(2.0 * x - 1.0) / PI.sqrt() * gamma(x)? * gamma(x + 0.5)?;
    Ok(rel_err(rhs, gamma(2.0 * x)?))
}

fn inv_c_err(a: f64) -> Result<f64> {
    let alpha = Alpha::new(a)?;
    Ok(rel_err(inv_c_alpha_closed_form(alpha), 1.0 / c_alpha(alpha)))
}

/// `∫₀^{π/2} cosⁿθ dθ` by 64-point Gauss–Legendre.
fn cos_power_oracle(n: usize, nodes: &[(f64, f64)]) -> f64 {
    let half = FRAC_PI_2 / 2.0;
    nodes.iter().map(|&(x, w)| w * half * (half * (x + 1.0)).cos().powi(n as i32)).sum()
}

/// Closed forms against independent evaluations: quadrature for the
/// trigonometric integrals, raw series for the transforms, Gamma products
/// for the duplication identities and the Gauss limit approached from
/// inside the disk.
///
/// Tolerances are absolute on the relative error and ignore `slack`.
pub fn check_identities(spec: &TrialSpec) -> Result<Vec<TrialReport>> {
    spec.validate()?;
    let config = QuadratureConfig::default();
    let mut trials: Vec<(usize, TrialOutcomes)> = (0..spec.n_trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(spec.seed, 4, i);
            let mut out = Vec::new();

            let (a, b) = (rng.gen_range(-0.95..0.95), rng.gen_range(-0.95..0.95));
            let (al, be) = (rng.gen_range(0.0..=4.0), rng.gen_range(0.0..=4.0));
            let ctx = format!("a={a} b={b} alpha={al} beta={be}");
            out.push(identity(CheckId::RatioSeries, ratio_series_err(a, b, al, be, &config), QUADRATURE_TOL, ctx));

            let z = Complex::from_polar(rng.gen_range(0.0..=0.9), rng.gen_range(0.0..std::f64::consts::TAU));
            let be = rng.gen_range(0.0..=3.0);
            let ctx = format!("z={z} beta={be}");
            out.push(identity(CheckId::ModulusPower, modulus_err(z, be, &config), MODULUS_TOL, ctx));

            let (a, b, e) = (rng.gen_range(0.05..1.5), rng.gen_range(0.05..1.5), rng.gen_range(0.2..=3.0));
            gauss_checks(a, b, e, &mut out);

            let (a, b, c, x) =
                (rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0), rng.gen_range(0.1..4.0), rng.gen_range(0.0..=0.95));
            let ctx = format!("a={a} b={b} c={c} x={x}");
            out.push(identity(CheckId::Euler, euler_err(a, b, c, x), TRANSFORM_TOL, ctx));

            let (a, c, x) = (rng.gen_range(0.0..2.0), rng.gen_range(0.1..4.0), rng.gen_range(0.0..=0.95));
            let ctx = format!("a={a} c={c} x={x}");
            out.push(identity(CheckId::Quadratic, quadratic_err(a, c, x), TRANSFORM_TOL, ctx));

            let x = rng.gen_range(0.1..20.0);
            out.push(identity(CheckId::Duplication, duplication_err(x), EXACT_TOL, format!("x={x}")));

            let a = rng.gen_range(-0.99..=10.0);
            out.push(identity(CheckId::InvCAlpha, inv_c_err(a), EXACT_TOL, format!("alpha={a}")));

            let a: f64 = rng.gen_range(f64::EPSILON..=6.0);
            let inv_c = 1.0 / c_alpha(Alpha::new(a).expect("positive alpha"));
            out.push(within(CheckId::InvCBelowPow2, inv_c, 2f64.powf(a), 0.0, &format!("alpha={a}")));
            (i, out)
        })
        .collect();

    let mut grid = Vec::new();
    let nodes = gauss_legendre(64);
    for n in 0..=40 {
        let oracle = cos_power_oracle(n, &nodes);
        let err = rel_err(cos_power_integral::<f64>(n), oracle);
        grid.push(within(CheckId::CosPower, err, EXACT_TOL, 0.0, &format!("n={n}")));
    }
    for k in 0..10 {
        // β = 1 collapses to 1/(1-r²)
        let z = Complex::from_polar(0.09 * k as f64, 0.7 * k as f64);
        let err = DiskPoint::from_complex(z)
            .and_then(|p| modulus_power_integral(p, 1.0))
            .map(|v| rel_err(v, 1.0 / (1.0 - z.norm_sqr())));
        grid.push(identity(CheckId::ModulusPower, err, EXACT_TOL, format!("z={z} beta=1")));
    }
    for k in 1..=50 {
        let a = 6.0 * k as f64 / 50.0;
        let inv_c = 1.0 / c_alpha(Alpha::new(a).expect("positive alpha"));
        grid.push(within(CheckId::InvCBelowPow2, inv_c, 2f64.powf(a), 0.0, &format!("alpha={a}")));
    }
    trials.push((spec.n_trials, grid));
    Ok(aggregate(&IDS, trials.into_iter()))
}
