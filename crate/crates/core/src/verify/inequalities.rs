use rand::Rng;

use super::{
    checked, pick, random_boundary_from, run_trials, thm_a_config, thm_a_constant, trial_rng, within, CheckId, Outcome,
    TrialOutcomes, TrialReport, TrialSpec,
};
use crate::bounds::{
    colonna_bound, lc_schwarz_pick_bound, m1_bound, m2_bound, m_bound, m_prime_bound, schwarz_bound,
    schwarz_pick_bound, schwarz_pick_limit_bound,
};
use crate::error::Result;
use crate::kernel::{derivative_pair, solve_dirichlet, DiskPoint};
use crate::quadrature::QuadratureConfig;
use crate::specfun::{c_alpha, Alpha};

const SCHWARZ_IDS: [CheckId; 5] =
    [CheckId::SchwarzM, CheckId::SchwarzM2, CheckId::SchwarzMPrime, CheckId::Schwarz2F1, CheckId::SchwarzM1];

const PICK_IDS: [CheckId; 5] =
    [CheckId::Pick2F1, CheckId::PickLimit, CheckId::PickChain, CheckId::PickLiChen, CheckId::PickColonna];

struct Draw {
    alpha: f64,
    r: f64,
    theta: f64,
    degree: usize,
    u: f64,
}

impl Draw {
    fn new<R: Rng>(rng: &mut R, spec: &TrialSpec) -> Self {
        Self {
            alpha: pick(rng, &spec.alpha_set),
            r: pick(rng, &spec.radius_set),
            theta: rng.gen_range(0.0..std::f64::consts::TAU),
            degree: rng.gen_range(0..=spec.max_degree),
            u: rng.gen_range(0.25..=1.0),
        }
    }

    fn context(&self) -> String {
        format!("alpha={} r={} theta={:.6} degree={}", self.alpha, self.r, self.theta, self.degree)
    }
}

/// Schwarz-type inequalities for `|f(z)|` and `|f(z) - (1-r²)^{α+1} f(0)/(1+r²)|`.
///
/// The boundary data are scaled to `‖f*‖_∞ = u·c_α` with `u ∈ [1/4, 1]`.
/// Since `|f| < ‖f*‖_∞/c_α` on the disk, every `f` is then a self-map as the
/// `M`-family bounds require.
pub fn check_schwarz(spec: &TrialSpec) -> Result<Vec<TrialReport>> {
    let config = QuadratureConfig::default();
    let c_config = thm_a_config();
    run_trials(spec, &SCHWARZ_IDS, |i| {
        let mut rng = trial_rng(spec.seed, 1, i);
        let d = Draw::new(&mut rng, spec);
        schwarz_trial(&mut rng, &d, spec.slack, &config, &c_config)
    })
}

fn schwarz_trial<R: Rng>(
    rng: &mut R,
    d: &Draw,
    slack: f64,
    config: &QuadratureConfig<f64>,
    c_config: &QuadratureConfig<f64>,
) -> TrialOutcomes {
    let inconclusive = || SCHWARZ_IDS.iter().map(|&id| (id, Outcome::Inconclusive)).collect();
    let Ok(alpha) = Alpha::new(d.alpha) else { return inconclusive() };
    let Ok(fstar) = random_boundary_from(rng, d.degree, d.u * c_alpha(alpha)) else { return inconclusive() };
    let Ok(z) = DiskPoint::from_polar(d.r, d.theta) else { return inconclusive() };
    let (f_z, f_0) = match (
        solve_dirichlet(alpha, &fstar, z, config),
        solve_dirichlet(alpha, &fstar, DiskPoint::origin(), config),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return inconclusive(),
    };
    let ctx = d.context();
    let (r, s) = (d.r, fstar.sup_norm());
    let q = (1.0 - r) * (1.0 + r);
    let lhs = (f_z - f_0 * (q.powf(d.alpha + 1.0) / (1.0 + r * r))).norm();

    let mut out = vec![
        checked(CheckId::SchwarzM, m_bound(r, alpha).map(|b| (lhs, b)), slack, &ctx),
        checked(CheckId::SchwarzM2, m2_bound(r, alpha).map(|b| (lhs, b)), slack, &ctx),
    ];
    if d.alpha >= 0.0 {
        out.push(checked(CheckId::SchwarzMPrime, m_prime_bound(r, alpha).map(|b| (lhs, b)), slack, &ctx));
    }
    out.push(checked(CheckId::Schwarz2F1, schwarz_bound(r, alpha).map(|b| (f_z.norm(), b * s)), slack, &ctx));
    let m1 = thm_a_constant(alpha, &fstar, c_config).and_then(|c| m1_bound(r, alpha, c));
    out.push(checked(CheckId::SchwarzM1, m1.map(|b| (f_z.norm(), b * s)), slack, &ctx));
    out
}

/// Schwarz-Pick inequalities for `‖D_f(z)‖ = |f_z| + |f_z̄|` with
/// `‖f*‖_∞ ∈ [1/4, 1]`; the Colonna bound is checked at `α = 0` only.
pub fn check_schwarz_pick(spec: &TrialSpec) -> Result<Vec<TrialReport>> {
    let config = QuadratureConfig::default();
    run_trials(spec, &PICK_IDS, |i| {
        let mut rng = trial_rng(spec.seed, 2, i);
        let d = Draw::new(&mut rng, spec);
        pick_trial(&mut rng, &d, spec.slack, &config)
    })
}

fn pick_trial<R: Rng>(rng: &mut R, d: &Draw, slack: f64, config: &QuadratureConfig<f64>) -> TrialOutcomes {
    let inconclusive = || {
        PICK_IDS
            .iter()
            .filter(|&&id| id != CheckId::PickColonna || d.alpha == 0.0)
            .map(|&id| (id, Outcome::Inconclusive))
            .collect()
    };
    let Ok(alpha) = Alpha::new(d.alpha) else { return inconclusive() };
    let Ok(fstar) = random_boundary_from(rng, d.degree, d.u) else { return inconclusive() };
    let Ok(z) = DiskPoint::from_polar(d.r, d.theta) else { return inconclusive() };
    let Ok(pair) = derivative_pair(alpha, &fstar, z, config) else { return inconclusive() };
    let ctx = d.context();
    let (r, s, norm) = (d.r, fstar.sup_norm(), pair.norm);

    let sp = schwarz_pick_bound(r, alpha);
    let limit = schwarz_pick_limit_bound(r, alpha);
    let mut out = vec![
        checked(CheckId::Pick2F1, sp.clone().map(|b| (norm, b * s)), slack, &ctx),
        checked(CheckId::PickLimit, limit.clone().map(|b| (norm, b * s)), slack, &ctx),
        match (sp, limit) {
            (Ok(a), Ok(b)) => within(CheckId::PickChain, a * s, b * s, slack, &ctx),
            _ => (CheckId::PickChain, Outcome::Inconclusive),
        },
        checked(CheckId::PickLiChen, lc_schwarz_pick_bound(r, alpha).map(|b| (norm, b * s)), slack, &ctx),
    ];
    if d.alpha == 0.0 {
        out.push(checked(CheckId::PickColonna, colonna_bound(r).map(|b| (norm, b)), slack, &ctx));
    }
    out
}
