//! Periodic trapezoidal quadrature and the closed-form trigonometric
//! integrals used both as primitives and as cross-checks.
//!
//! All integrals are returned as means over the circle, `(1/2π)∫₀^{2π} f dθ`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::DiskPoint;
use crate::scalar::{CompensatedSum, Real};
use crate::specfun::{hyp2f1, HypergeomParams};

/// Node count above which integrand evaluations are spread over threads.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    n_initial: usize,
    n_max: usize,
    pub rel_tol: T,
    pub abs_tol: T,
}

impl<T: Real> QuadratureConfig<T> {
    pub fn new(n_initial: usize, n_max: usize, rel_tol: T, abs_tol: T) -> Result<Self> {
        if !n_initial.is_power_of_two() || !n_max.is_power_of_two() || n_initial < 2 {
            return Err(Error::domain("node counts must be powers of two, at least 2"));
        }
        if n_initial > n_max {
            return Err(Error::domain(format!("n_initial {n_initial} exceeds n_max {n_max}")));
        }
        if !(rel_tol > T::zero() && abs_tol > T::zero()) {
            return Err(Error::domain("tolerances must be positive"));
        }
        Ok(Self { n_initial, n_max, rel_tol, abs_tol })
    }

    pub fn n_initial(&self) -> usize {
        self.n_initial
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Same tolerances with a different node ceiling (rounded up to a power of two).
    pub fn with_n_max(self, n_max: usize) -> Self {
        let n_max = n_max.max(2).next_power_of_two();
        Self { n_max, n_initial: self.n_initial.min(n_max), ..self }
    }

    /// Both levels fixed at `n` nodes; the result is the plain `n`-point rule.
    pub fn fixed(n: usize) -> Self {
        let n = n.max(2).next_power_of_two();
        Self { n_initial: n, n_max: n, rel_tol: T::lit(1e-11), abs_tol: T::lit(1e-14) }
    }
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self { n_initial: 256, n_max: 1 << 20, rel_tol: T::lit(1e-11), abs_tol: T::lit(1e-14) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<V, T> {
    pub value: V,
    pub error_estimate: T,
    pub nodes_used: usize,
    pub converged: bool,
}

impl<V: Copy, T: Real> QuadratureResult<V, T> {
    /// Turns an unconverged result into [`Error::QuadratureNotConverged`].
    pub fn require_converged(self) -> Result<V>
    where
        V: QuadValue<T>,
    {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::QuadratureNotConverged {
                nodes: self.nodes_used,
                value: self.value.magnitude().as_f64(),
                error_estimate: self.error_estimate.as_f64(),
            })
        }
    }
}

/// Values that can be integrated: real or complex scalars and small tuples of them.
pub trait QuadValue<T: Real>: Copy + Send + Sync {
    fn zero() -> Self;
    /// Deterministic compensated sum.
    fn sum(values: &[Self]) -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, s: T) -> Self;
    /// Largest component modulus.
    fn magnitude(self) -> T;
    fn is_finite(self) -> bool;
}

fn compensated<T: Real>(it: impl Iterator<Item = T>) -> T {
    let mut s = CompensatedSum::new();
    it.for_each(|x| s.add(x));
    s.value()
}

impl<T: Real> QuadValue<T> for T {
    fn zero() -> Self {
        T::zero()
    }
    fn sum(values: &[Self]) -> Self {
        compensated(values.iter().copied())
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, s: T) -> Self {
        self * s
    }
    fn magnitude(self) -> T {
        self.abs()
    }
    fn is_finite(self) -> bool {
        num_traits::Float::is_finite(self)
    }
}

impl<T: Real> QuadValue<T> for Complex<T> {
    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn sum(values: &[Self]) -> Self {
        Complex::new(compensated(values.iter().map(|v| v.re)), compensated(values.iter().map(|v| v.im)))
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, s: T) -> Self {
        self * s
    }
    fn magnitude(self) -> T {
        self.norm()
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl<T: Real, V: QuadValue<T>> QuadValue<T> for [V; 2] {
    fn zero() -> Self {
        [V::zero(), V::zero()]
    }
    fn sum(values: &[Self]) -> Self {
        let first: Vec<V> = values.iter().map(|v| v[0]).collect();
        let second: Vec<V> = values.iter().map(|v| v[1]).collect();
        [V::sum(&first), V::sum(&second)]
    }
    fn add(self, other: Self) -> Self {
        [self[0].add(other[0]), self[1].add(other[1])]
    }
    fn sub(self, other: Self) -> Self {
        [self[0].sub(other[0]), self[1].sub(other[1])]
    }
    fn scale(self, s: T) -> Self {
        [self[0].scale(s), self[1].scale(s)]
    }
    fn magnitude(self) -> T {
        self[0].magnitude().max(self[1].magnitude())
    }
    fn is_finite(self) -> bool {
        self[0].is_finite() && self[1].is_finite()
    }
}

/// Sum of `f(θ_j)` over `θ_j = 2π(offset + j·stride)/n`, `j < count`, and
/// the sum of their magnitudes.
fn node_sum<T, V, F>(f: &F, n: usize, offset: usize, stride: usize, count: usize) -> Result<(V, T)>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    let step = T::TAU() / T::from_count(n);
    let eval = |j: usize| {
        let theta = step * T::from_count(offset + j * stride);
        let v = f(theta);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand { theta: theta.as_f64() })
        }
    };
    let values: Vec<V> = if count >= PARALLEL_THRESHOLD {
        (0..count).into_par_iter().map(eval).collect::<Result<_>>()?
    } else {
        (0..count).map(eval).collect::<Result<_>>()?
    };
    let magnitudes: Vec<T> = values.iter().map(|v| v.magnitude()).collect();
    Ok((V::sum(&values), compensated(magnitudes.into_iter())))
}

/// Mean of `f` over the circle by the composite trapezoidal rule on
/// equispaced nodes, doubling the node count until two successive levels
/// agree within `max(rel_tol·|value|, abs_tol)`, or within a rounding floor
/// of `64ε` times the mean integrand magnitude (a vanishing integral of a
/// large integrand cannot resolve below that).
///
/// The first level's even nodes give the half-resolution estimate, so an
/// integrand resolved by `n_initial` nodes converges without refinement.
/// Hitting `n_max` yields `converged == false`; a non-finite integrand value
/// is an error.
pub fn integrate_periodic<T, V, F>(f: F, config: &QuadratureConfig<T>) -> Result<QuadratureResult<V, T>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    let mut n = config.n_initial;
    let (even, even_abs) = node_sum(&f, n, 0, 2, n / 2)?;
    let (odd, odd_abs) = node_sum(&f, n, 1, 2, n / 2)?;
    let mut total = even.add(odd);
    let mut total_abs = even_abs + odd_abs;
    let mut previous = even.scale(T::one() / T::from_count(n / 2));
    loop {
        let value = total.scale(T::one() / T::from_count(n));
        let error_estimate = value.sub(previous).magnitude();
        let floor = T::lit(64.0) * T::epsilon() * total_abs / T::from_count(n);
        let tol = (config.rel_tol * value.magnitude()).max(config.abs_tol).max(floor);
        if error_estimate <= tol {
            return Ok(QuadratureResult { value, error_estimate, nodes_used: n, converged: true });
        }
        if n * 2 > config.n_max || n == config.n_max {
            return Ok(QuadratureResult { value, error_estimate, nodes_used: n, converged: false });
        }
        let (fresh, fresh_abs) = node_sum(&f, 2 * n, 1, 2, n)?;
        total = total.add(fresh);
        total_abs += fresh_abs;
        previous = value;
        n *= 2;
    }
}

/// Plain `n`-point trapezoidal mean (n rounded up to a power of two).
pub fn integrate_periodic_fixed<T, V, F>(f: F, n: usize) -> Result<V>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V + Sync,
{
    let n = n.max(1).next_power_of_two();
    Ok(node_sum(&f, n, 0, 1, n)?.0.scale(T::one() / T::from_count(n)))
}

/// `∫₀^{π/2} cosⁿθ dθ` from the double-factorial formula:
/// `((2k-1)!!/(2k)!!)·π/2` for `n = 2k` and `(2k)!!/(2k+1)!!` for `n = 2k+1`.
pub fn cos_power_integral<T: Real>(n: usize) -> T {
    let k = n / 2;
    if n % 2 == 0 {
        (1..=k).fold(T::FRAC_PI_2(), |acc, j| {
            let j = T::from_count(j);
            acc * (T::lit(2.0) * j - T::one()) / (T::lit(2.0) * j)
        })
    } else {
        (1..=k).fold(T::one(), |acc, j| {
            let j = T::from_count(j);
            acc * (T::lit(2.0) * j) / (T::lit(2.0) * j + T::one())
        })
    }
}

/// A truncated series value with the remainder estimate at the cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSeries<T> {
    pub value: T,
    pub terms: usize,
    pub tail_estimate: T,
}

const RATIO_SERIES_TOL: f64 = 1e-14;

/// Default outer-index cap for [`ratio_integral_series`].
pub const RATIO_SERIES_MAX_TERMS: usize = 50_000;

/// Double-series closed form of `(1/2π)∫ (1 - a cosθ)^α / (1 - b cosθ)^β dθ`:
///
/// `Σ_n Σ_{m≤2n} C(α, m) C(-β, 2n-m) (2n)!/(4ⁿ (n!)²) aᵐ b^{2n-m}`.
///
/// The outer sum stops once the absolute outer-term bound falls below
/// `1e-14 · |sum|` for three consecutive indices, or after `max_terms`.
pub fn ratio_integral_series<T: Real>(a: T, b: T, alpha: T, beta: T, max_terms: usize) -> Result<TruncatedSeries<T>> {
    if !(a.abs() < T::one() && b.abs() < T::one()) {
        return Err(Error::domain(format!("|a| and |b| must be below 1, got a = {a}, b = {b}")));
    }
    if !(alpha >= T::zero() && beta >= T::zero()) {
        return Err(Error::domain("exponents must be non-negative"));
    }
    let max_terms = max_terms.max(1);
    // numerator and denominator expansion coefficients, grown on demand
    let mut num: Vec<T> = vec![T::one()];
    let mut den: Vec<T> = vec![T::one()];
    let grow = |v: &mut Vec<T>, upto: usize, exponent: T, base: T| {
        while v.len() <= upto {
            let m = v.len();
            let last = v[m - 1];
            let mm = T::from_count(m);
            v.push(last * (exponent - mm + T::one()) / mm * base);
        }
    };
    let q = a.abs().max(b.abs());
    let geometric = q * q;
    let mut sum = CompensatedSum::new();
    let mut weight = T::one();
    let mut quiet = 0;
    let mut tail = T::infinity();
    for n in 0..max_terms {
        if n > 0 {
            let nn = T::from_count(n);
            // (2n)!/(4ⁿ(n!)²) = (1/2)_n / n!
            weight *= (nn - T::lit(0.5)) / nn;
        }
        grow(&mut num, 2 * n, alpha, a);
        grow(&mut den, 2 * n, -beta, b);
        let mut inner = CompensatedSum::new();
        let mut bound = T::zero();
        for m in 0..=2 * n {
            let t = num[m] * den[2 * n - m];
            inner.add(t);
            bound += t.abs();
        }
        sum.add(weight * inner.value());
        let outer_bound = weight * bound;
        tail = if geometric < T::one() {
            outer_bound * geometric / (T::one() - geometric)
        } else {
            T::infinity()
        };
        if outer_bound <= T::lit(RATIO_SERIES_TOL) * sum.value().abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(TruncatedSeries { value: sum.value(), terms: n + 1, tail_estimate: tail });
            }
        } else {
            quiet = 0;
        }
    }
    Ok(TruncatedSeries { value: sum.value(), terms: max_terms, tail_estimate: tail })
}

/// Closed form `(1-|z|²)^{1-2β} ₂F₁(1-β, 1-β; 1; |z|²)` of `(1/2π)∫ |1 - z e^{iθ}|^{-2β} dθ`.
pub fn modulus_power_integral<T: Real>(z: DiskPoint<T>, beta: T) -> Result<T> {
    if !(beta >= T::zero()) {
        return Err(Error::domain(format!("beta must be non-negative, got {beta}")));
    }
    let r = z.radius();
    let x = r * r;
    let one_minus = (T::one() - r) * (T::one() + r);
    let a = T::one() - beta;
    let f = hyp2f1(HypergeomParams::new(a, a, T::one())?, x)?;
    Ok(one_minus.powf(T::one() - T::lit(2.0) * beta) * f)
}
