//! Randomized certification of the inequalities and identities.
//!
//! Every suite draws its trials from a ChaCha8 stream keyed by
//! `(seed, suite, trial)`, evaluates them in parallel and aggregates in trial
//! order, so a fixed [`TrialSpec`] always yields the same reports.

mod identities;
mod inequalities;
mod machinery;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::{m2_bound, m_bound};
use crate::error::{Error, Result};
use crate::kernel::BoundaryData;
use crate::quadrature::{integrate_periodic, QuadratureConfig};
use crate::specfun::Alpha;

pub use identities::{check_identities, gauss_legendre};
pub use inequalities::{check_schwarz, check_schwarz_pick};
pub use machinery::{check_proof_machinery, q_sequence, r_function};

/// Parameters shared by every suite.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSpec {
    pub seed: u64,
    pub n_trials: usize,
    pub max_degree: usize,
    pub alpha_set: Vec<f64>,
    pub radius_set: Vec<f64>,
    /// Absolute tolerance on inequality margins.
    pub slack: f64,
}

impl Default for TrialSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            n_trials: 1000,
            max_degree: 8,
            alpha_set: vec![-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 5.0],
            radius_set: vec![0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99],
            slack: 1e-9,
        }
    }
}

impl TrialSpec {
    pub fn new(seed: u64, n_trials: usize) -> Result<Self> {
        let spec = Self { seed, n_trials, ..Self::default() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_trials == 0 {
            return Err(Error::domain("n_trials must be positive"));
        }
        if self.max_degree == 0 {
            return Err(Error::domain("max_degree must be positive"));
        }
        if self.alpha_set.is_empty() || self.alpha_set.iter().any(|a| !(a.is_finite() && *a > -1.0)) {
            return Err(Error::domain("alpha_set must be non-empty with every alpha > -1"));
        }
        if self.radius_set.is_empty() || self.radius_set.iter().any(|r| !(*r >= 0.0 && *r < 1.0)) {
            return Err(Error::domain("radius_set must be non-empty with every radius in [0, 1)"));
        }
        if !(self.slack >= 0.0) {
            return Err(Error::domain(format!("slack must be non-negative, got {}", self.slack)));
        }
        Ok(())
    }
}

/// What a report certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    /// `|f(z) - (1-r²)^{α+1} f(0)/(1+r²)| ≤ M(r, α)` for self-maps.
    SchwarzM,
    /// Same left side against `M₂`.
    SchwarzM2,
    /// Same left side against `M′`, `α ≥ 0`.
    SchwarzMPrime,
    /// `|f(z)| ≤ ₂F₁(-α/2, -α/2; 1; r²)‖f*‖_∞`.
    Schwarz2F1,
    /// `|f(z)| ≤ M₁(r, α)‖f*‖_∞`; informational.
    SchwarzM1,
    /// `‖D_f(z)‖` against the hypergeometric Schwarz-Pick bound.
    Pick2F1,
    /// `‖D_f(z)‖` against the `1/c_α` form.
    PickLimit,
    /// Hypergeometric bound never exceeds its limit form.
    PickChain,
    /// `‖D_f(z)‖` against the Li–Chen bound.
    PickLiChen,
    /// `‖D_f(z)‖ ≤ 4/(π(1-r²))` for harmonic self-maps.
    PickColonna,
    QMonotone,
    QLimit,
    RLower,
    RAtInverseR,
    MobiusMax,
    RatioSeries,
    ModulusPower,
    CosPower,
    GaussLimit,
    Euler,
    Quadratic,
    Duplication,
    InvCAlpha,
    InvCBelowPow2,
}

impl CheckId {
    pub const ALL: [CheckId; 24] = [
        CheckId::SchwarzM,
        CheckId::SchwarzM2,
        CheckId::SchwarzMPrime,
        CheckId::Schwarz2F1,
        CheckId::SchwarzM1,
        CheckId::Pick2F1,
        CheckId::PickLimit,
        CheckId::PickChain,
        CheckId::PickLiChen,
        CheckId::PickColonna,
        CheckId::QMonotone,
        CheckId::QLimit,
        CheckId::RLower,
        CheckId::RAtInverseR,
        CheckId::MobiusMax,
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

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::SchwarzM => "SCHWARZ_M",
            CheckId::SchwarzM2 => "SCHWARZ_M2",
            CheckId::SchwarzMPrime => "SCHWARZ_M_PRIME",
            CheckId::Schwarz2F1 => "SCHWARZ_2F1",
            CheckId::SchwarzM1 => "SCHWARZ_M1",
            CheckId::Pick2F1 => "PICK_2F1",
            CheckId::PickLimit => "PICK_LIMIT",
            CheckId::PickChain => "PICK_CHAIN",
            CheckId::PickLiChen => "PICK_LI_CHEN",
            CheckId::PickColonna => "PICK_COLONNA",
            CheckId::QMonotone => "Q_MONOTONE",
            CheckId::QLimit => "Q_LIMIT",
            CheckId::RLower => "R_LOWER",
            CheckId::RAtInverseR => "R_AT_INVERSE_R",
            CheckId::MobiusMax => "MOBIUS_MAX",
            CheckId::RatioSeries => "RATIO_SERIES",
            CheckId::ModulusPower => "MODULUS_POWER",
            CheckId::CosPower => "COS_POWER",
            CheckId::GaussLimit => "GAUSS_LIMIT",
            CheckId::Euler => "EULER",
            CheckId::Quadratic => "QUADRATIC",
            CheckId::Duplication => "DUPLICATION",
            CheckId::InvCAlpha => "INV_C_ALPHA",
            CheckId::InvCBelowPow2 => "INV_C_BELOW_POW2",
        }
    }

    /// Informational checks are reported but never count as failures.
    pub fn is_informational(self) -> bool {
        matches!(self, CheckId::SchwarzM1)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One failing (or, for informational checks, exceeding) trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub trial: usize,
    pub context: String,
    pub quantity: f64,
    pub bound: f64,
    pub margin: f64,
}

/// Aggregated outcome of one check over all trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub theorem_id: CheckId,
    pub informational: bool,
    pub n_checked: usize,
    pub n_violations: usize,
    pub n_inconclusive: usize,
    /// Smallest `bound - quantity`; `None` when nothing was checked.
    pub worst_margin: Option<f64>,
    /// The first [`MAX_DETAILS`] violations.
    pub details: Vec<Violation>,
}

pub const MAX_DETAILS: usize = 32;

impl TrialReport {
    fn empty(id: CheckId) -> Self {
        Self {
            theorem_id: id,
            informational: id.is_informational(),
            n_checked: 0,
            n_violations: 0,
            n_inconclusive: 0,
            worst_margin: None,
            details: Vec::new(),
        }
    }

    /// No violations, or informational.
    pub fn passed(&self) -> bool {
        self.informational || self.n_violations == 0
    }

    /// Inconclusive trials as a fraction of all attempted ones.
    pub fn inconclusive_rate(&self) -> f64 {
        let total = self.n_checked + self.n_inconclusive;
        if total == 0 {
            0.0
        } else {
            self.n_inconclusive as f64 / total as f64
        }
    }
}

/// Which group of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Schwarz,
    SchwarzPick,
    Identities,
    Machinery,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Schwarz => "schwarz",
            Suite::SchwarzPick => "schwarz-pick",
            Suite::Identities => "identities",
            Suite::Machinery => "machinery",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "schwarz" => Suite::Schwarz,
            "schwarz-pick" | "schwarz_pick" | "pick" => Suite::SchwarzPick,
            "identities" => Suite::Identities,
            "machinery" => Suite::Machinery,
            "all" => Suite::All,
            _ => return Err(Error::domain(format!("unknown suite {s:?}"))),
        })
    }
}

/// Runs a suite; `All` concatenates the four in a fixed order.
pub fn run_suite(suite: Suite, spec: &TrialSpec) -> Result<Vec<TrialReport>> {
    Ok(match suite {
        Suite::Schwarz => check_schwarz(spec)?,
        Suite::SchwarzPick => check_schwarz_pick(spec)?,
        Suite::Identities => check_identities(spec)?,
        Suite::Machinery => check_proof_machinery(spec)?,
        Suite::All => {
            let mut out = check_schwarz(spec)?;
            out.extend(check_schwarz_pick(spec)?);
            out.extend(check_proof_machinery(spec)?);
            out.extend(check_identities(spec)?);
            out
        }
    })
}

// ---------------------------------------------------------------------------
// Trial plumbing

/// Result of one check inside one trial.
#[derive(Debug, Clone)]
pub(crate) enum Outcome {
    Checked { quantity: f64, bound: f64, slack: f64, context: String },
    Inconclusive,
}

pub(crate) type TrialOutcomes = Vec<(CheckId, Outcome)>;

/// Inequality `quantity ≤ bound`, violated when short by more than `slack`.
pub(crate) fn within(id: CheckId, quantity: f64, bound: f64, slack: f64, context: &str) -> (CheckId, Outcome) {
    (id, Outcome::Checked { quantity, bound, slack, context: context.to_string() })
}

/// `Ok` values become checks, errors become inconclusive.
pub(crate) fn checked(id: CheckId, r: Result<(f64, f64)>, slack: f64, context: &str) -> (CheckId, Outcome) {
    match r {
        Ok((q, b)) => within(id, q, b, slack, context),
        Err(_) => (id, Outcome::Inconclusive),
    }
}

/// Independent stream for `(seed, suite, trial)`.
pub(crate) fn trial_rng(seed: u64, suite: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite << 40) | trial as u64);
    rng
}

pub(crate) fn run_trials<F>(spec: &TrialSpec, ids: &[CheckId], trial: F) -> Result<Vec<TrialReport>>
where
    F: Fn(usize) -> TrialOutcomes + Sync,
{
    spec.validate()?;
    let per_trial: Vec<TrialOutcomes> = (0..spec.n_trials).into_par_iter().map(&trial).collect();
    Ok(aggregate(ids, per_trial.into_iter().enumerate()))
}

pub(crate) fn aggregate(ids: &[CheckId], trials: impl Iterator<Item = (usize, TrialOutcomes)>) -> Vec<TrialReport> {
    let mut reports: Vec<TrialReport> = ids.iter().map(|&id| TrialReport::empty(id)).collect();
    for (i, outcomes) in trials {
        for (id, outcome) in outcomes {
            let rep = reports
                .iter_mut()
                .find(|r| r.theorem_id == id)
                .expect("every outcome id is listed by its suite");
            match outcome {
                Outcome::Inconclusive => rep.n_inconclusive += 1,
                Outcome::Checked { quantity, bound, slack, context } => {
                    rep.n_checked += 1;
                    let margin = bound - quantity;
                    // NaN margins count as violations
                    let worst = rep.worst_margin.map_or(margin, |w| if margin < w || margin.is_nan() { margin } else { w });
                    rep.worst_margin = Some(worst);
                    if !(margin >= -slack) {
                        rep.n_violations += 1;
                        if rep.details.len() < MAX_DETAILS {
                            rep.details.push(Violation { trial: i, context, quantity, bound, margin });
                        }
                    }
                }
            }
        }
    }
    reports
}

pub(crate) fn pick<R: Rng>(rng: &mut R, set: &[f64]) -> f64 {
    set[rng.gen_range(0..set.len())]
}

// ---------------------------------------------------------------------------
// Random data and helpers

/// Random trigonometric polynomial of the given degree whose sup-norm is
/// `target_sup_norm`.
///
/// Coefficients are standard complex Gaussians drawn from ChaCha8 seeded
/// with `seed`, then rescaled.
pub fn random_boundary(seed: u64, degree: usize, target_sup_norm: f64) -> Result<BoundaryData<f64>> {
    random_boundary_from(&mut ChaCha8Rng::seed_from_u64(seed), degree, target_sup_norm)
}

/// [`random_boundary`] drawing from a caller-owned generator.
pub fn random_boundary_from<R: Rng>(rng: &mut R, degree: usize, target_sup_norm: f64) -> Result<BoundaryData<f64>> {
    if !(target_sup_norm > 0.0 && target_sup_norm <= 1.0) {
        return Err(Error::domain(format!("target sup-norm must lie in (0, 1], got {target_sup_norm}")));
    }
    let coefficients: Vec<Complex<f64>> = (0..2 * degree + 1)
        .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let raw = BoundaryData::from_coefficients(coefficients)?;
    if raw.sup_norm() == 0.0 {
        // measure-zero event; fall back to a constant
        return Ok(BoundaryData::constant(Complex::new(target_sup_norm, 0.0)));
    }
    Ok(raw.scaled(target_sup_norm / raw.sup_norm()))
}

/// `c = P_α[|f*|](0)/‖f*‖_∞`. The kernel is identically 1 at the origin, so
/// this is the mean of `|f*|` over the circle divided by the sup-norm for
/// every `α`.
pub fn thm_a_constant(_alpha: Alpha<f64>, fstar: &BoundaryData<f64>, config: &QuadratureConfig<f64>) -> Result<f64> {
    let sup = fstar.sup_norm();
    if !(sup > 0.0) {
        return Err(Error::domain("boundary data vanishes identically"));
    }
    let mean = integrate_periodic(|t: f64| fstar.eval(t).norm(), config)?.require_converged()?;
    Ok((mean / sup).min(1.0))
}

/// Quadrature settings for [`thm_a_constant`]: `|f*|` may have kinks, so the
/// trapezoidal rule only converges algebraically there.
pub fn thm_a_config() -> QuadratureConfig<f64> {
    QuadratureConfig::new(256, 1 << 20, 1e-9, 1e-14).expect("valid constants")
}

/// One row of the M versus M₂ comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Figure1Row {
    pub alpha: f64,
    pub m: f64,
    pub m2: f64,
}

/// `α = min, min + step, ...` up to `max` inclusive, rounded to 12 decimals.
pub fn alpha_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite() && step > 0.0 && min <= max) {
        return Err(Error::domain("alpha grid needs finite min <= max and a positive step"));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| ((min + k as f64 * step) * 1e12).round() / 1e12).collect())
}

/// `M(r, α)` and `M₂(r, α)` over an α grid.
pub fn figure1_data(r: f64, alpha_grid: &[f64]) -> Result<Vec<Figure1Row>> {
    alpha_grid
        .iter()
        .map(|&a| {
            let alpha = Alpha::new(a)?;
            Ok(Figure1Row { alpha: a, m: m_bound(r, alpha)?, m2: m2_bound(r, alpha)? })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(TrialSpec::new(0, 10).is_ok());
        assert!(TrialSpec::new(0, 0).is_err());
        let bad = TrialSpec { alpha_set: vec![-1.0], ..TrialSpec::default() };
        assert!(bad.validate().is_err());
        let bad = TrialSpec { radius_set: vec![1.0], ..TrialSpec::default() };
        assert!(bad.validate().is_err());
        let bad = TrialSpec { slack: -1.0, ..TrialSpec::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn random_boundary_contract() {
        let b = random_boundary(7, 8, 1.0).unwrap();
        assert_eq!(b.degree(), 8);
        assert!((b.sup_norm() - 1.0).abs() <= 1e-12);
        let grid_max = b.samples().iter().map(|s| s.norm()).fold(0.0, f64::max);
        assert!(grid_max <= 1.0 + 1e-12);
        assert_eq!(b, random_boundary(7, 8, 1.0).unwrap());
        assert_ne!(b, random_boundary(8, 8, 1.0).unwrap());

        let c = random_boundary(3, 0, 0.4).unwrap();
        assert_eq!(c.degree(), 0);
        assert!((c.coefficient(0).norm() - 0.4).abs() < 1e-15);

        assert!(random_boundary(0, 2, 0.0).is_err());
        assert!(random_boundary(0, 2, 1.5).is_err());
    }

    #[test]
    fn thm_a_constant_examples() {
        let al = Alpha::new(0.5).unwrap();
        let cfg = thm_a_config();
        let one = BoundaryData::constant(Complex::new(1.0, 0.0));
        assert!((thm_a_constant(al, &one, &cfg).unwrap() - 1.0).abs() < 1e-14);
        let e = BoundaryData::from_modes(&[(1, Complex::new(1.0, 0.0))]).unwrap();
        assert!((thm_a_constant(al, &e, &cfg).unwrap() - 1.0).abs() < 1e-12);
        let cos = BoundaryData::from_modes(&[(-1, Complex::new(0.5, 0.0)), (1, Complex::new(0.5, 0.0))]).unwrap();
        let c = thm_a_constant(al, &cos, &cfg).unwrap();
        assert!((c - 2.0 / std::f64::consts::PI).abs() < 1e-8, "{c}");
        let zero = BoundaryData::constant(Complex::new(0.0, 0.0));
        assert!(thm_a_constant(al, &zero, &cfg).is_err());
    }

    #[test]
    fn aggregate_counts() {
        let ids = [CheckId::SchwarzM, CheckId::SchwarzM1];
        let trials = vec![
            (0, vec![within(CheckId::SchwarzM, 1.0, 2.0, 1e-9, ""), within(CheckId::SchwarzM1, 3.0, 2.0, 1e-9, "")]),
            (1, vec![within(CheckId::SchwarzM, 2.0 + 5e-10, 2.0, 1e-9, ""), (CheckId::SchwarzM1, Outcome::Inconclusive)]),
            (2, vec![within(CheckId::SchwarzM, 2.1, 2.0, 1e-9, "x")]),
        ];
        let reps = aggregate(&ids, trials.into_iter());
        assert_eq!(reps[0].n_checked, 3);
        assert_eq!(reps[0].n_violations, 1);
        assert_eq!(reps[0].details[0].trial, 2);
        assert!((reps[0].worst_margin.unwrap() + 0.1).abs() < 1e-12);
        assert!(!reps[0].passed());
        assert_eq!(reps[1].n_violations, 1);
        assert_eq!(reps[1].n_inconclusive, 1);
        assert!(reps[1].passed());
        assert!((reps[1].inconclusive_rate() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn grid_and_figure_rows() {
        let g = alpha_grid(-0.95, 3.0, 0.05).unwrap();
        assert_eq!(g.len(), 80);
        assert_eq!(g[0], -0.95);
        assert_eq!(*g.last().unwrap(), 3.0);
        assert!(g.contains(&0.0));
        let rows = figure1_data(0.99, &g).unwrap();
        for row in &rows {
            assert!(row.m <= row.m2, "{row:?}");
        }
        let zero = rows.iter().find(|r| r.alpha == 0.0).unwrap();
        let hethcote = 4.0 / std::f64::consts::PI * 0.99f64.atan();
        assert!((zero.m - hethcote).abs() < 1e-10 && (zero.m2 - hethcote).abs() < 1e-10);
    }

    #[test]
    fn suite_names() {
        for s in [Suite::Schwarz, Suite::SchwarzPick, Suite::Identities, Suite::Machinery, Suite::All] {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
