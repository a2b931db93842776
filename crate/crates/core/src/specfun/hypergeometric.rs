use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

use super::gamma::gamma;

/// Distance from a non-positive integer below which `c` is rejected.
const POLE_TOLERANCE: f64 = 1e-12;

/// Parameter triple `(a, b, c)` of `₂F₁(a, b; c; x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomParams<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> HypergeomParams<T> {
    /// Fails when `c` lies within 1e-12 of `0, -1, -2, ...` or any parameter
    /// is not finite.
    pub fn new(a: T, b: T, c: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::domain("hypergeometric parameters must be finite"));
        }
        if c <= T::lit(POLE_TOLERANCE) && (c - c.round()).abs() <= T::lit(POLE_TOLERANCE) {
            return Err(Error::domain(format!("c = {c} is zero or a negative integer")));
        }
        Ok(Self { a, b, c })
    }

    /// `c - a - b`, computed symmetrically in `a` and `b`.
    #[inline]
    pub fn excess(&self) -> T {
        self.c - (self.a + self.b)
    }

    /// The series terminates (a polynomial) when `a` or `b` is a non-positive integer.
    pub fn is_terminating(&self) -> bool {
        is_nonpositive_integer(self.a) || is_nonpositive_integer(self.b)
    }
}

fn is_nonpositive_integer<T: Real>(v: T) -> bool {
    v <= T::zero() && v == v.round()
}

/// Knobs of the power-series evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSettings {
    /// Maximum number of series terms before giving up.
    pub term_cap: usize,
    /// Relative tolerance on the estimated remainder.
    pub rel_tol: f64,
    /// Number of consecutive terms that must meet the tolerance.
    pub consecutive: usize,
    /// Allow the Euler transform when it yields a faster-decaying series.
    pub allow_euler: bool,
}

impl Default for SeriesSettings {
    fn default() -> Self {
        Self { term_cap: 1_000_000, rel_tol: 1e-13, consecutive: 3, allow_euler: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    None,
    Euler,
}

impl Transform {
    pub fn as_str(self) -> &'static str {
        match self {
            Transform::None => "none",
            Transform::Euler => "euler",
        }
    }
}

/// Value of `₂F₁` together with evaluation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2f1Eval<T> {
    pub value: T,
    pub terms: usize,
    pub tail_estimate: T,
    pub transform: Transform,
}

fn check_argument<T: Real>(x: T) -> Result<()> {
    if x >= T::zero() && x < T::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("hypergeometric argument must lie in [0, 1), got {x}")))
    }
}

struct SeriesSum<T> {
    value: T,
    terms: usize,
    tail: T,
}

/// Sums `Σ (a)_n (b)_n / ((c)_n n!) xⁿ` by term recurrence.
///
/// Stops once `consecutive` successive remainder estimates fall below
/// `rel_tol · |sum|`. The remainder after term `t_n` is estimated
/// geometrically as `|t_n| ρ / (1 - ρ)` with `ρ = max(x, |t_{n+1}/t_n|)`,
/// an upper bound once the term ratios have settled towards `x`.
fn series<T: Real>(a: T, b: T, c: T, x: T, settings: &SeriesSettings) -> Result<SeriesSum<T>> {
    let mut sum = CompensatedSum::new();
    let mut term = T::one();
    sum.add(term);
    if x == T::zero() {
        return Ok(SeriesSum { value: T::one(), terms: 1, tail: T::zero() });
    }
    let tol = T::lit(settings.rel_tol);
    let mut quiet = 0usize;
    let mut tail = T::infinity();
    for n in 0..settings.term_cap {
        let nn = T::from_count(n);
        let num = (a + nn) * (b + nn);
        if num == T::zero() {
            return Ok(SeriesSum { value: sum.value(), terms: n + 1, tail: T::zero() });
        }
        let ratio = num / ((c + nn) * (nn + T::one())) * x;
        term *= ratio;
        sum.add(term);
        let m = nn + T::one();
        let next_ratio = ((a + m) * (b + m) / ((c + m) * (m + T::one())) * x).abs();
        let rho = next_ratio.max(x);
        tail = if rho < T::one() { term.abs() * rho / (T::one() - rho) } else { T::infinity() };
        if tail <= tol * sum.value().abs() {
            quiet += 1;
            if quiet >= settings.consecutive {
                return Ok(SeriesSum { value: sum.value(), terms: n + 2, tail });
            }
        } else {
            quiet = 0;
        }
        if !term.is_finite() {
            break;
        }
    }
    Err(Error::SeriesNotConverged {
        terms: settings.term_cap,
        partial_sum: sum.value().as_f64(),
        tail_estimate: tail.as_f64(),
    })
}

/// Plain power series with no transformation applied.
pub fn hyp2f1_raw<T: Real>(params: HypergeomParams<T>, x: T, settings: &SeriesSettings) -> Result<Hyp2f1Eval<T>> {
    check_argument(x)?;
    let s = series(params.a, params.b, params.c, x, settings)?;
    Ok(Hyp2f1Eval { value: s.value, terms: s.terms, tail_estimate: s.tail, transform: Transform::None })
}

/// `₂F₁(a, b; c; x)` for `x ∈ [0, 1)` with explicit settings and diagnostics.
///
/// The Euler transform `(1-x)^{c-a-b} ₂F₁(c-a, c-b; c; x)` is used when
/// `c < a + b` and the original series does not terminate: the transformed
/// terms then decay like `n^{c-a-b-1} xⁿ` instead of `n^{a+b-c-1} xⁿ`.
pub fn hyp2f1_with<T: Real>(params: HypergeomParams<T>, x: T, settings: &SeriesSettings) -> Result<Hyp2f1Eval<T>> {
    check_argument(x)?;
    if settings.allow_euler && params.excess() < T::zero() && !params.is_terminating() {
        let (c, e) = (params.c, params.excess());
        let s = series(c - params.a, c - params.b, c, x, settings)?;
        let scale = (T::one() - x).powf(e);
        return Ok(Hyp2f1Eval {
            value: scale * s.value,
            terms: s.terms,
            tail_estimate: scale * s.tail,
            transform: Transform::Euler,
        });
    }
    hyp2f1_raw(params, x, settings)
}

/// `₂F₁(a, b; c; x)` for `x ∈ [0, 1)` with default settings.
pub fn hyp2f1<T: Real>(params: HypergeomParams<T>, x: T) -> Result<T> {
    hyp2f1_with(params, x, &SeriesSettings::default()).map(|e| e.value)
}

/// Right-hand side of the Euler transform, `(1-x)^{c-a-b} ₂F₁(c-a, c-b; c; x)`,
/// with the inner series summed directly.
pub fn euler_transform_eval<T: Real>(params: HypergeomParams<T>, x: T) -> Result<T> {
    check_argument(x)?;
    let HypergeomParams { a, b, c } = params;
    let s = series(c - a, c - b, c, x, &SeriesSettings::default())?;
    Ok((T::one() - x).powf(params.excess()) * s.value)
}

/// Right-hand side of the quadratic transformation
/// `₂F₁(a, a+1/2; c; x) = ((1+√(1-x))/2)^{-2a} ₂F₁(2a, 2a-c+1; c; (1-√(1-x))/(1+√(1-x)))`.
pub fn quadratic_transform_eval<T: Real>(a: T, c: T, x: T) -> Result<T> {
    HypergeomParams::new(a, a + T::lit(0.5), c)?;
    check_argument(x)?;
    let two = T::lit(2.0);
    let s = (T::one() - x).sqrt();
    let onep = T::one() + s;
    // (1-s)/(1+s) written without the cancelling difference
    let y = x / (onep * onep);
    let inner = HypergeomParams::new(two * a, two * a - c + T::one(), c)?;
    Ok((onep / two).powf(-two * a) * hyp2f1(inner, y)?)
}

/// Gauss summation: `lim_{x→1⁻} ₂F₁(a, b; c; x) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`
/// for `c - a - b > 0`.
///
/// Terminating series are summed exactly at `x = 1`; otherwise all Gamma
/// arguments must be positive.
pub fn hyp2f1_at_one<T: Real>(params: HypergeomParams<T>) -> Result<T> {
    let HypergeomParams { a, b, c } = params;
    let e = params.excess();
    if !(e > T::zero()) {
        return Err(Error::domain(format!("Gauss summation needs c - a - b > 0, got {e}")));
    }
    if c > T::zero() && c - a > T::zero() && c - b > T::zero() {
        return Ok(gamma(c)? * gamma(e)? / (gamma(c - a)? * gamma(c - b)?));
    }
    if params.is_terminating() {
        let degree = [a, b]
            .into_iter()
            .filter(|v| is_nonpositive_integer(*v))
            .map(|v| (-v).to_usize().unwrap_or(0))
            .min()
            .unwrap_or(0);
        let mut term = T::one();
        let mut sum = CompensatedSum::new();
        sum.add(term);
        for n in 0..degree {
            let nn = T::from_count(n);
            term *= (a + nn) * (b + nn) / ((c + nn) * (nn + T::one()));
            sum.add(term);
        }
        return Ok(sum.value());
    }
    Err(Error::domain("Gauss summation with non-positive Gamma arguments is not supported"))
}
