use num_complex::Complex;
use rand::Rng;

use super::{aggregate, trial_rng, within, CheckId, TrialOutcomes, TrialReport, TrialSpec};
use crate::error::Result;
use rayon::prelude::*;

const IDS: [CheckId; 5] =
    [CheckId::QMonotone, CheckId::QLimit, CheckId::RLower, CheckId::RAtInverseR, CheckId::MobiusMax];

const Q_TERMS: usize = 10_000;
const Q_LIMIT_TOL: f64 = 1e-2;
const R_INVERSE_TOL: f64 = 1e-12;
const MOBIUS_NODES: usize = 4096;

/// `Q_0, ..., Q_n` for `Q_n = ((1/2+α/4)_n (1+α/4)_n) / ((1/2)_n (1+α/2)_n)`,
/// built from the ratio of consecutive terms.
pub fn q_sequence(alpha: f64, n: usize) -> Vec<f64> {
    let mut q = Vec::with_capacity(n + 1);
    let mut cur = 1.0;
    q.push(cur);
    for k in 0..n {
        let k = k as f64;
        cur *= (0.5 + alpha / 4.0 + k) * (1.0 + alpha / 4.0 + k) / ((0.5 + k) * (1.0 + alpha / 2.0 + k));
        q.push(cur);
    }
    q
}

/// `R(α) = 2r(1+α)(1+αr²) / ((1+αr²)² + (1+α)²r²)`.
pub fn r_function(alpha: f64, r: f64) -> f64 {
    let s = 1.0 + alpha * r * r;
    2.0 * r * (1.0 + alpha) * s / (s * s + (1.0 + alpha) * (1.0 + alpha) * r * r)
}

/// `max_θ |((1+α)(r²-ξ) + 1 - r²)/(1-ξ)|` with `ξ = r e^{-iθ}` on a grid
/// containing `θ = 0` and `θ = π`.
fn mobius_max(alpha: f64, r: f64) -> f64 {
    (0..MOBIUS_NODES)
        .map(|j| {
            let xi = Complex::from_polar(r, -std::f64::consts::TAU * j as f64 / MOBIUS_NODES as f64);
            (((r * r - xi) * (1.0 + alpha) + (1.0 - r * r)) / (1.0 - xi)).norm()
        })
        .fold(0.0, f64::max)
}

fn q_checks(alpha: f64, slack: f64, out: &mut TrialOutcomes) {
    let q = q_sequence(alpha, Q_TERMS);
    let sign = if alpha >= 0.0 { 1.0 } else { -1.0 };
    // smallest signed step, relative to the current term
    let worst = q.windows(2).map(|w| sign * (w[1] - w[0]) / w[0]).fold(f64::INFINITY, f64::min);
    let ctx = format!("alpha={alpha}");
    out.push(within(CheckId::QMonotone, -worst, 0.0, slack, &ctx));
    let limit = 2f64.powf(alpha / 2.0);
    out.push(within(CheckId::QLimit, (q[Q_TERMS] - limit).abs() / limit, Q_LIMIT_TOL, 0.0, &ctx));
}

fn r_checks(alpha: f64, r: f64, slack: f64, out: &mut TrialOutcomes) {
    let ctx = format!("alpha={alpha} r={r}");
    out.push(within(CheckId::RLower, r_function(0.0, r), r_function(alpha, r), slack, &ctx));
    if r > 0.0 {
        out.push(within(CheckId::RAtInverseR, (r_function(1.0 / r, r) - 1.0).abs(), R_INVERSE_TOL, 0.0, &ctx));
    }
}

fn mobius_check(alpha: f64, r: f64, out: &mut TrialOutcomes) {
    // no slack: the inequality is strict and the margin is O(1)
    let ctx = format!("alpha={alpha} r={r}");
    out.push(within(CheckId::MobiusMax, mobius_max(alpha, r), 1.0 - alpha, 0.0, &ctx));
}

/// Auxiliary inequalities behind the Schwarz-Pick estimates.
///
/// Each random trial draws `α ≥ 0`, `α < 0` and `r`; a deterministic pass
/// over the spec's `α` and radius sets (plus `α ∈ {-0.9, -0.5, -0.1}` for
/// the Möbius bound) follows the random ones.
pub fn check_proof_machinery(spec: &TrialSpec) -> Result<Vec<TrialReport>> {
    spec.validate()?;
    let slack = spec.slack;
    let mut trials: Vec<(usize, TrialOutcomes)> = (0..spec.n_trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(spec.seed, 3, i);
            let a_pos: f64 = rng.gen_range(0.0..=6.0);
            let a_neg: f64 = rng.gen_range(-0.99..-0.01);
            let r: f64 = rng.gen_range(0.0..0.999);
            let mut out = Vec::new();
            q_checks(a_pos, slack, &mut out);
            q_checks(a_neg, slack, &mut out);
            r_checks(a_pos, r, slack, &mut out);
            mobius_check(a_neg, r, &mut out);
            (i, out)
        })
        .collect();

    let mut grid = Vec::new();
    for &a in &spec.alpha_set {
        q_checks(a, slack, &mut grid);
        for &r in &spec.radius_set {
            if a >= 0.0 {
                r_checks(a, r, slack, &mut grid);
            }
        }
    }
    let mut neg: Vec<f64> = spec.alpha_set.iter().copied().filter(|a| *a < 0.0).collect();
    neg.extend([-0.9, -0.5, -0.1]);
    for &a in &neg {
        for &r in &spec.radius_set {
            mobius_check(a, r, &mut grid);
        }
    }
    trials.push((spec.n_trials, grid));
    Ok(aggregate(&IDS, trials.into_iter()))
}
