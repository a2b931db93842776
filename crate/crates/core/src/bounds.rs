//! Closed-form Schwarz and Schwarz-Pick type bounds for alpha-harmonic
//! functions, both the earlier baselines and the hypergeometric ones.
//!
//! All values are per unit `‖f*‖_∞`. Bounds tagged [`Scaling::SelfMap`]
//! (M, M₂, M′ and Colonna's) assume `f` maps the disk into itself instead
//! of scaling linearly.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::kernel_at;
use crate::quadrature::{integrate_periodic, QuadratureConfig};
use crate::scalar::Real;
use crate::specfun::{c_alpha, hyp2f1, Alpha, HypergeomParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BoundId {
    #[serde(rename = "M1")]
    M1,
    #[serde(rename = "M2")]
    M2,
    #[serde(rename = "COLONNA")]
    Colonna,
    #[serde(rename = "LC_SP")]
    LcSp,
    #[serde(rename = "M")]
    M,
    #[serde(rename = "M_PRIME")]
    MPrime,
    #[serde(rename = "SCHWARZ_2F1")]
    Schwarz2F1,
    #[serde(rename = "SP_2F1")]
    Sp2F1,
    #[serde(rename = "SP_LIMIT")]
    SpLimit,
    #[serde(rename = "L1_MEAN")]
    L1Mean,
}

impl BoundId {
    pub const ALL: [BoundId; 10] = [
        BoundId::M1,
        BoundId::M2,
        BoundId::Colonna,
        BoundId::LcSp,
        BoundId::M,
        BoundId::MPrime,
        BoundId::Schwarz2F1,
        BoundId::Sp2F1,
        BoundId::SpLimit,
        BoundId::L1Mean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::M1 => "M1",
            BoundId::M2 => "M2",
            BoundId::Colonna => "COLONNA",
            BoundId::LcSp => "LC_SP",
            BoundId::M => "M",
            BoundId::MPrime => "M_PRIME",
            BoundId::Schwarz2F1 => "SCHWARZ_2F1",
            BoundId::Sp2F1 => "SP_2F1",
            BoundId::SpLimit => "SP_LIMIT",
            BoundId::L1Mean => "L1_MEAN",
        }
    }

    pub fn scaling(self) -> Scaling {
        match self {
            BoundId::M | BoundId::M2 | BoundId::MPrime | BoundId::Colonna => Scaling::SelfMap,
            _ => Scaling::Linear,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::domain(format!("unknown bound id {s:?}")))
    }
}

/// How a bound relates to `‖f*‖_∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scaling {
    /// Multiply by `‖f*‖_∞`.
    Linear,
    /// Valid for `f` mapping the disk into the disk.
    SelfMap,
}

/// A bound evaluated at `(r, α)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub bound_id: BoundId,
    pub r: T,
    pub alpha: T,
    pub aux: Option<T>,
    pub value: T,
    pub scaling: Scaling,
}

fn check_radius<T: Real>(r: T) -> Result<()> {
    if r >= T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("radius must lie in [0, 1), got {r}")))
    }
}

fn two<T: Real>() -> T {
    T::lit(2.0)
}

/// `₂F₁(-α/2, -α/2; 1; r²)`.
fn schwarz_factor<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    let h = -alpha.value() / two();
    hyp2f1(HypergeomParams::new(h, h, T::one())?, r * r)
}

/// Li–Chen bound `M₁(r, α)` on `|f(z)|` for the caller-supplied
/// `c = P_α[|f*|](0)/‖f*‖_∞ ∈ (0, 1]`. At `c = 1` the arctangent takes its
/// limit `π/2`.
pub fn m1_bound<T: Real>(r: T, alpha: Alpha<T>, c: T) -> Result<T> {
    check_radius(r)?;
    if !(c > T::zero() && c <= T::one()) {
        return Err(Error::domain(format!("c must lie in (0, 1], got {c}")));
    }
    let a = alpha.value();
    let angle = if c == T::one() {
        T::FRAC_PI_2()
    } else {
        ((T::one() + r) / (T::one() - r) * (c * T::FRAC_PI_2()).tan()).atan()
    };
    Ok(if a >= T::zero() {
        two::<T>().powf(T::one() + a) / T::PI() * angle
    } else {
        two::<T>().powf(T::one() - a) / T::PI() * ((T::one() - r) * (T::one() + r)).powf(a) * angle
    })
}

/// Khalfallah–Mateljević bound `M₂(r, α)` on `|f(z) - (1-r²)^{α+1} f(0)/(1+r²)|`.
pub fn m2_bound<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    check_radius(r)?;
    let a = alpha.value();
    let s = T::one() - r;
    Ok(if a >= T::zero() {
        two::<T>().powf(a + two()) / T::PI() * r.atan() + two::<T>().powf(a + T::one()) * s * (T::one() - s.powf(a))
    } else {
        T::lit(4.0) / T::PI() * s.powf(a) * r.atan() + s.powf(a) - T::one()
    })
}

/// Colonna's harmonic Schwarz-Pick bound `(4/π)/(1-r²)`.
pub fn colonna_bound<T: Real>(r: T) -> Result<T> {
    check_radius(r)?;
    Ok(T::lit(4.0) / T::PI() / ((T::one() - r) * (T::one() + r)))
}

/// Li–Chen Schwarz-Pick bound on `‖D_f(z)‖/‖f*‖_∞`.
pub fn lc_schwarz_pick_bound<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    check_radius(r)?;
    let a = alpha.value();
    let q = (T::one() - r) * (T::one() + r);
    Ok(if a >= T::zero() {
        (T::one() + a) * two::<T>().powf(T::one() + a) / q
    } else {
        two::<T>().powf(T::one() - a) / q.powf(T::one() - a)
    })
}

/// Schwarz-type bound `M(r, α)` on `|f(z) - (1-r²)^{α+1} f(0)/(1+r²)|`.
pub fn m_bound<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    check_radius(r)?;
    let a = alpha.value();
    let half = T::lit(0.5);
    let (one, r2) = (T::one(), r * r);
    let q = (one - r) * (one + r);
    let first = q.powf(a + one) * ((one - r).powf(-a) - one).abs() / (one + r2);
    let x = T::lit(4.0) * r2 / ((one + r2) * (one + r2));
    let f = hyp2f1(HypergeomParams::new(half, half - a * half, T::lit(1.5))?, x)?;
    let lead = if a >= T::zero() { two::<T>().powf(two::<T>() + a * half) } else { T::lit(4.0) };
    let second = lead * r * (one + r2).powf(a * half - one) / T::PI() * f;
    Ok(first + second)
}

/// Simplified bound `M′(r, α)`, defined for `α ≥ 0`.
pub fn m_prime_bound<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    check_radius(r)?;
    let a = alpha.value();
    if a < T::zero() {
        return Err(Error::domain(format!("M' is defined for alpha >= 0, got {a}")));
    }
    let p = |e: T| two::<T>().powf(e);
    let one = T::one();
    Ok(if a >= two() {
        p(one + a) * r * (one / T::PI() + a)
    } else if a >= one {
        r * (p(two::<T>() + a / two()) / T::PI() + p(one + a) * a)
    } else {
        p(one + a / two()) * r + p(one + a) * (one - r) * r.powf(a)
    })
}

/// `₂F₁(-α/2, -α/2; 1; r²)`, the Schwarz-type bound on `|f(z)|/‖f*‖_∞`.
pub fn schwarz_bound<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    check_radius(r)?;
    schwarz_factor(r, alpha)
}

/// Schwarz-Pick bound on `‖D_f(z)‖/‖f*‖_∞` in terms of `₂F₁(-α/2, -α/2; 1; r²)`.
pub fn schwarz_pick_bound<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    check_radius(r)?;
    let a = alpha.value();
    let lead = if a >= T::zero() { two::<T>() * (T::one() + a) } else { two() };
    Ok(lead / ((T::one() - r) * (T::one() + r)) * schwarz_factor(r, alpha)?)
}

/// Schwarz-Pick bound with the hypergeometric factor replaced by its limit `1/c_α`.
pub fn schwarz_pick_limit_bound<T: Real>(r: T, alpha: Alpha<T>) -> Result<T> {
    check_radius(r)?;
    let a = alpha.value();
    let lead = if a >= T::zero() { two::<T>() * (T::one() + a) } else { two() };
    Ok(lead / c_alpha(alpha) / ((T::one() - r) * (T::one() + r)))
}

/// `(1/2π)∫ |P_α(r e^{iθ})| dθ` by quadrature.
pub fn l1_mean_kernel<T: Real>(alpha: Alpha<T>, r: T, config: &QuadratureConfig<T>) -> Result<T> {
    check_radius(r)?;
    let a = alpha.value();
    integrate_periodic(|t: T| kernel_at(a, Complex::from_polar(r, t)).norm(), config)?.require_converged()
}

/// Evaluates one bound into a report. `aux` is the `c` of M₁ and ignored otherwise.
pub fn evaluate<T: Real>(id: BoundId, r: T, alpha: Alpha<T>, aux: Option<T>) -> Result<BoundReport<T>> {
    let value = match id {
        BoundId::M1 => {
            let c = aux.ok_or_else(|| Error::domain("M1 needs the constant c"))?;
            m1_bound(r, alpha, c)?
        }
        BoundId::M2 => m2_bound(r, alpha)?,
        BoundId::Colonna => colonna_bound(r)?,
        BoundId::LcSp => lc_schwarz_pick_bound(r, alpha)?,
        BoundId::M => m_bound(r, alpha)?,
        BoundId::MPrime => m_prime_bound(r, alpha)?,
        BoundId::Schwarz2F1 => schwarz_bound(r, alpha)?,
        BoundId::Sp2F1 => schwarz_pick_bound(r, alpha)?,
        BoundId::SpLimit => schwarz_pick_limit_bound(r, alpha)?,
        BoundId::L1Mean => l1_mean_kernel(alpha, r, &QuadratureConfig::default())?,
    };
    let aux = if id == BoundId::M1 { aux } else { None };
    Ok(BoundReport { bound_id: id, r, alpha: alpha.value(), aux, value, scaling: id.scaling() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn al(a: f64) -> Alpha<f64> {
        Alpha::new(a).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn bound_id_parsing() {
        assert_eq!("m_prime".parse::<BoundId>().unwrap(), BoundId::MPrime);
        assert_eq!("COLONNA".parse::<BoundId>().unwrap(), BoundId::Colonna);
        assert!("nope".parse::<BoundId>().is_err());
        for id in BoundId::ALL {
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), id);
        }
    }

    #[test]
    fn m1_values() {
        assert!(close(m1_bound(0.0, al(0.0), 0.5).unwrap(), 0.5, 1e-15));
        assert!(close(m1_bound(0.3, al(0.0), 1.0).unwrap(), 1.0, 1e-15));
        assert!(close(m1_bound(0.3, al(2.0), 1.0).unwrap(), 4.0, 1e-15));
        assert!(m1_bound(0.3, al(0.0), 0.0).is_err());
        assert!(m1_bound(0.3, al(0.0), 1.1).is_err());
        // blows up towards the boundary for negative alpha
        let near = m1_bound(0.999_999, al(-0.5), 0.5).unwrap();
        let far = m1_bound(0.9, al(-0.5), 0.5).unwrap();
        assert!(near > 100.0 * far);
    }

    #[test]
    fn m2_values() {
        for r in [0.0, 0.2, 0.7, 0.95] {
            assert!(close(m2_bound(r, al(0.0)).unwrap(), 4.0 / PI * r.atan(), 1e-12));
        }
        assert_eq!(m2_bound(0.0, al(1.3)).unwrap(), 0.0);
        assert!(m2_bound(0.0, al(-0.4)).unwrap().abs() < 1e-16);
        // (8/π)·atan(0.99) + 4·0.01·0.99
        assert!(close(m2_bound(0.99, al(1.0)).unwrap(), 2.026_803_730_375_240_3, 1e-13));
    }

    #[test]
    fn colonna_values() {
        assert!(close(colonna_bound(0.0).unwrap(), 1.273_239_544_735_162_7, 1e-15));
        assert!(close(colonna_bound(0.5).unwrap(), 4.0 / PI / 0.75, 1e-15));
        assert!(colonna_bound(1.0).is_err());
    }

    #[test]
    fn lc_values() {
        assert!(close(lc_schwarz_pick_bound(0.0, al(0.0)).unwrap(), 2.0, 1e-15));
        assert!(close(lc_schwarz_pick_bound(0.0, al(1.0)).unwrap(), 8.0, 1e-15));
        let want = 2f64.powf(1.5) / 0.75f64.powf(1.5);
        assert!(close(lc_schwarz_pick_bound(0.5, al(-0.5)).unwrap(), want, 1e-14));
    }

    #[test]
    fn m_bound_values() {
        for a in [-0.5, 0.0, 1.0, 3.0] {
            assert_eq!(m_bound(0.0, al(a)).unwrap(), 0.0);
        }
        assert!(close(m_bound(0.5, al(0.0)).unwrap(), 4.0 / PI * 0.5f64.atan(), 1e-12));
        assert!(m_bound(0.99, al(1.0)).unwrap() <= m2_bound(0.99, al(1.0)).unwrap());
    }

    #[test]
    fn m_prime_values() {
        assert!(close(m_prime_bound(0.4, al(0.0)).unwrap(), 2.0, 1e-15));
        assert_eq!(m_prime_bound(0.0, al(2.0)).unwrap(), 0.0);
        assert!(close(m_prime_bound(0.5, al(3.0)).unwrap(), 8.0 * (1.0 / PI + 3.0), 1e-15));
        assert!(m_prime_bound(0.5, al(-0.1)).is_err());
    }

    #[test]
    fn schwarz_values() {
        for r in [0.0, 0.4, 0.9] {
            assert_eq!(schwarz_bound(r, al(0.0)).unwrap(), 1.0);
            assert!(close(schwarz_bound(r, al(2.0)).unwrap(), 1.0 + r * r, 1e-15));
        }
        assert!(close(schwarz_pick_bound(0.0, al(0.0)).unwrap(), 2.0, 1e-15));
        assert!(close(schwarz_pick_bound(0.5, al(2.0)).unwrap(), 10.0, 1e-14));
        // ₂F₁(1/4, 1/4; 1; 1/4) · 2/0.75 from mpmath
        assert!(close(schwarz_pick_bound(0.5, al(-0.5)).unwrap(), 2.713_090_126_922_549_356_5, 1e-13));
        assert!(close(schwarz_pick_limit_bound(0.0, al(0.0)).unwrap(), 2.0, 1e-15));
        assert!(close(schwarz_pick_limit_bound(0.0, al(2.0)).unwrap(), 12.0, 1e-14));
    }

    #[test]
    fn limit_bound_beats_li_chen_for_positive_alpha() {
        for a in [0.5, 1.0, 3.0] {
            for r in [0.0, 0.5, 0.9, 0.999] {
                assert!(schwarz_pick_limit_bound(r, al(a)).unwrap() < lc_schwarz_pick_bound(r, al(a)).unwrap());
            }
        }
    }

    #[test]
    fn l1_mean_values() {
        let cfg = QuadratureConfig::default();
        for r in [0.0, 0.5, 0.9] {
            assert!(close(l1_mean_kernel(al(0.0), r, &cfg).unwrap(), 1.0, 1e-11));
        }
        assert!(close(l1_mean_kernel(al(2.0), 0.0, &cfg).unwrap(), 1.0, 1e-14));
        let v = l1_mean_kernel(al(2.0), 0.999, &cfg).unwrap();
        assert!((v - 2.0).abs() < 5e-3);
    }

    #[test]
    fn evaluate_fills_reports() {
        let rep = evaluate(BoundId::M1, 0.5, al(2.0), Some(0.6)).unwrap();
        assert_eq!(rep.aux, Some(0.6));
        assert!(evaluate(BoundId::M1, 0.5, al(2.0), None).is_err());
        let rep = evaluate(BoundId::Colonna, 0.0, al(2.0), Some(0.6)).unwrap();
        assert_eq!(rep.aux, None);
        assert_eq!(rep.scaling, Scaling::SelfMap);
        for id in BoundId::ALL {
            let rep = evaluate(id, 0.5, al(2.0), Some(0.6)).unwrap();
            assert!(rep.value >= 0.0, "{id}");
        }
    }
}
