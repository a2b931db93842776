//! Special functions: Gamma, Beta, Pochhammer symbols, generalized
//! binomial coefficients, the Gauss hypergeometric function and the
//! normalizing constant of the real alpha-harmonic kernel.
//!
//! Everything here is real-valued and defined on the ranges the kernel and
//! bound computations need; negative Gamma arguments and complex
//! hypergeometric parameters are not supported.

mod gamma;
mod hypergeometric;

pub use gamma::{beta, binom_general, gamma, pochhammer};
pub use hypergeometric::{
    euler_transform_eval, hyp2f1, hyp2f1_at_one, hyp2f1_raw, hyp2f1_with, quadratic_transform_eval,
    HypergeomParams, Hyp2f1Eval, SeriesSettings, Transform,
};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Weight parameter of the operator `∂_z (1-|z|²)^{-α} ∂_z̄`, strictly above -1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha<T>(T);

impl<T: Real> Alpha<T> {
    pub fn new(value: T) -> Result<Self> {
        if value.is_finite() && value > -T::one() {
            Ok(Alpha(value))
        } else {
            Err(Error::domain(format!("alpha must be a finite real > -1, got {value}")))
        }
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }
}

/// `c_α = Γ(α/2+1)² / Γ(α+1)`.
pub fn c_alpha<T: Real>(alpha: Alpha<T>) -> T {
    let a = alpha.value();
    let half = T::lit(0.5);
    // arguments are > 1/2 and > 0 respectively for every admissible α
    let num = gamma(a * half + T::one()).expect("positive argument");
    let den = gamma(a + T::one()).expect("positive argument");
    num * num / den
}

/// Closed form `2^α Γ(1/2+α/2) / (√π Γ(1+α/2))` of `1/c_α`, obtained from
/// the duplication formula. Kept separate from [`c_alpha`] so the two routes
/// can be checked against each other.
pub fn inv_c_alpha_closed_form<T: Real>(alpha: Alpha<T>) -> T {
    let a = alpha.value();
    let half = T::lit(0.5);
    let g1 = gamma(half + a * half).expect("positive argument");
    let g2 = gamma(T::one() + a * half).expect("positive argument");
    T::lit(2.0).powf(a) * g1 / (T::PI().sqrt() * g2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(x: f64) -> Alpha<f64> {
        Alpha::new(x).unwrap()
    }

    #[test]
    fn alpha_rejects_minus_one_and_below() {
        assert!(Alpha::new(-1.0f64).is_err());
        assert!(Alpha::new(-2.5f64).is_err());
        assert!(Alpha::new(f64::NAN).is_err());
        assert!(Alpha::new(-0.999f64).is_ok());
    }

    #[test]
    fn c_alpha_known_values() {
        assert!((c_alpha(alpha(0.0)) - 1.0).abs() < 1e-15);
        assert!((c_alpha(alpha(2.0)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn inverse_c_alpha_is_below_two_to_alpha() {
        for a in [0.5, 1.0, 3.0] {
            let inv = 1.0 / c_alpha(alpha(a));
            assert!(inv < 2f64.powf(a), "alpha = {a}");
        }
    }

    #[test]
    fn duplication_route_matches_gamma_ratio() {
        for a in [-0.99, -0.5, 0.0, 0.7, 2.0, 5.5, 10.0] {
            let lhs = 1.0 / c_alpha(alpha(a));
            let rhs = inv_c_alpha_closed_form(alpha(a));
            assert!(((lhs - rhs) / rhs).abs() < 1e-12, "alpha = {a}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn c_alpha_in_single_precision() {
        let v = c_alpha(Alpha::new(2.0f32).unwrap());
        assert!((v - 0.5).abs() < 1e-6);
    }
}
