//! The alpha-harmonic Poisson kernel
//! `P_α(z) = (1-|z|²)^{α+1} / ((1-z)(1-z̄)^{α+1})`, the Dirichlet solver
//! `f(z) = (1/2π)∫ P_α(z e^{-iθ}) f*(e^{iθ}) dθ`, and derivatives of both.
//!
//! Powers of `1 - z̄` use the principal branch; `Re(1 - z̄) > 0` on the disk
//! so the argument stays in `(-π/2, π/2)`.
//!
//! Near the boundary the kernel concentrates around `θ = arg z` and the
//! trapezoidal rule needs on the order of `(1-|z|)^{-1}` nodes; raise
//! `n_max` of the [`QuadratureConfig`] accordingly for `|z| > 0.99`.

mod boundary;

pub use boundary::{BoundaryData, BoundaryFile};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_periodic, integrate_periodic_fixed, QuadratureConfig, QuadratureResult};
use crate::scalar::Real;
use crate::specfun::{c_alpha, Alpha};

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint<T> {
    re: T,
    im: T,
}

impl<T: Real> DiskPoint<T> {
    pub fn new(re: T, im: T) -> Result<Self> {
        if re.is_finite() && im.is_finite() && re * re + im * im < T::one() {
            Ok(Self { re, im })
        } else {
            Err(Error::domain(format!("point {re}{im:+}i is not inside the unit disk")))
        }
    }

    pub fn from_complex(z: Complex<T>) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn from_polar(r: T, theta: T) -> Result<Self> {
        Self::from_complex(Complex::from_polar(r, theta))
    }

    pub fn origin() -> Self {
        Self { re: T::zero(), im: T::zero() }
    }

    pub fn re(&self) -> T {
        self.re
    }

    pub fn im(&self) -> T {
        self.im
    }

    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }

    pub fn radius(self) -> T {
        self.re.hypot(self.im)
    }
}

/// `1 - |ξ|²` without cancellation for `|ξ|` near 1.
#[inline]
fn one_minus_sq<T: Real>(xi: Complex<T>) -> T {
    let r = xi.norm();
    (T::one() - r) * (T::one() + r)
}

/// Kernel at an arbitrary interior point, in the form
/// `(1-|ξ|²)^{α+1} e^{iα·arg(1-ξ)} / |1-ξ|^{α+2}`.
#[inline]
pub(crate) fn kernel_at<T: Real>(alpha: T, xi: Complex<T>) -> Complex<T> {
    let w = Complex::new(T::one(), T::zero()) - xi;
    let modulus = one_minus_sq(xi).powf(alpha + T::one()) / w.norm().powf(alpha + T::lit(2.0));
    Complex::from_polar(modulus, alpha * w.arg())
}

/// `(∂_ξ P_α(ξ), ∂_ξ̄ P_α(ξ))`.
#[inline]
pub(crate) fn kernel_grad_at<T: Real>(alpha: T, xi: Complex<T>) -> (Complex<T>, Complex<T>) {
    let one = T::one();
    let s = one_minus_sq(xi);
    let w = Complex::new(one, T::zero()) - xi.conj(); // 1 - ξ̄
    let (wn, phi) = (w.norm(), w.arg());
    let s_pow = s.powf(alpha);
    // ∂_ξ̄ P = (α+1)(1-|ξ|²)^α (1-ξ̄)^{-α-2}
    let d_bar = Complex::from_polar((alpha + one) * s_pow / wn.powf(alpha + T::lit(2.0)), -(alpha + T::lit(2.0)) * phi);
    // ∂_ξ P = (1-|ξ|²)^α (1-ξ)^{-2} (1-ξ̄)^{-α-1} [(α+1)(|ξ|²-ξ̄) + 1 - |ξ|²]
    let bracket = (Complex::new(xi.norm_sqr(), T::zero()) - xi.conj()) * (alpha + one) + Complex::new(s, T::zero());
    let d = Complex::from_polar(s_pow / wn.powf(alpha + T::lit(3.0)), (one - alpha) * phi) * bracket;
    (d, d_bar)
}

/// Complex Poisson kernel `P_α(z)`.
pub fn poisson_kernel<T: Real>(alpha: Alpha<T>, z: DiskPoint<T>) -> Complex<T> {
    kernel_at(alpha.value(), z.to_complex())
}

/// Real kernel `K_α(z) = c_α (1-|z|²)^{α+1} / |1-z|^{α+2}`.
pub fn real_kernel<T: Real>(alpha: Alpha<T>, z: DiskPoint<T>) -> T {
    let a = alpha.value();
    let zc = z.to_complex();
    let w = Complex::new(T::one(), T::zero()) - zc;
    c_alpha(alpha) * one_minus_sq(zc).powf(a + T::one()) / w.norm().powf(a + T::lit(2.0))
}

/// `(∂_z P_α(z e^{-iθ}), ∂_z̄ P_α(z e^{-iθ}))`.
pub fn kernel_derivatives<T: Real>(alpha: Alpha<T>, z: DiskPoint<T>, theta: T) -> (Complex<T>, Complex<T>) {
    let rot = Complex::from_polar(T::one(), -theta);
    let (d, d_bar) = kernel_grad_at(alpha.value(), z.to_complex() * rot);
    (d * rot, d_bar * rot.conj())
}

/// Poisson-type integral with quadrature diagnostics.
pub fn solve_dirichlet_report<T: Real>(
    alpha: Alpha<T>,
    fstar: &BoundaryData<T>,
    z: DiskPoint<T>,
    config: &QuadratureConfig<T>,
) -> Result<QuadratureResult<Complex<T>, T>> {
    let a = alpha.value();
    let zc = z.to_complex();
    integrate_periodic(
        |t: T| kernel_at(a, zc * Complex::from_polar(T::one(), -t)) * fstar.eval(t),
        config,
    )
}

/// Alpha-harmonic extension `f(z) = (1/2π)∫ P_α(z e^{-iθ}) f*(e^{iθ}) dθ`.
///
/// Quadrature non-convergence is an error.
pub fn solve_dirichlet<T: Real>(
    alpha: Alpha<T>,
    fstar: &BoundaryData<T>,
    z: DiskPoint<T>,
    config: &QuadratureConfig<T>,
) -> Result<Complex<T>> {
    solve_dirichlet_report(alpha, fstar, z, config)?.require_converged()
}

/// First-order Wirtinger derivatives of the extension at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativePair<T> {
    pub d_z: Complex<T>,
    pub d_zbar: Complex<T>,
    /// `|f_z| + |f_z̄|`.
    pub norm: T,
}

impl<T: Real> DerivativePair<T> {
    pub fn new(d_z: Complex<T>, d_zbar: Complex<T>) -> Self {
        Self { d_z, d_zbar, norm: d_z.norm() + d_zbar.norm() }
    }
}

fn derivative_integrand<'a, T: Real>(
    alpha: T,
    fstar: &'a BoundaryData<T>,
    z: Complex<T>,
) -> impl Fn(T) -> [Complex<T>; 2] + Sync + 'a {
    move |t: T| {
        let rot = Complex::from_polar(T::one(), -t);
        let (d, d_bar) = kernel_grad_at(alpha, z * rot);
        let f = fstar.eval(t);
        [d * rot * f, d_bar * rot.conj() * f]
    }
}

/// `f_z` and `f_z̄` by differentiating under the integral sign, with diagnostics.
pub fn derivative_pair_report<T: Real>(
    alpha: Alpha<T>,
    fstar: &BoundaryData<T>,
    z: DiskPoint<T>,
    config: &QuadratureConfig<T>,
) -> Result<QuadratureResult<DerivativePair<T>, T>> {
    let r = integrate_periodic(derivative_integrand(alpha.value(), fstar, z.to_complex()), config)?;
    Ok(QuadratureResult {
        value: DerivativePair::new(r.value[0], r.value[1]),
        error_estimate: r.error_estimate,
        nodes_used: r.nodes_used,
        converged: r.converged,
    })
}

/// `f_z` and `f_z̄` by differentiating under the integral sign.
pub fn derivative_pair<T: Real>(
    alpha: Alpha<T>,
    fstar: &BoundaryData<T>,
    z: DiskPoint<T>,
    config: &QuadratureConfig<T>,
) -> Result<DerivativePair<T>> {
    let r = derivative_pair_report(alpha, fstar, z, config)?;
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::QuadratureNotConverged {
            nodes: r.nodes_used,
            value: r.value.norm.as_f64(),
            error_estimate: r.error_estimate.as_f64(),
        })
    }
}

/// Finite-difference estimate of `|Δ_α f(z)|` with `Δ_α = ∂_z (1-|z|²)^{-α} ∂_z̄`.
///
/// `∂_z̄ f` comes from quadrature of the differentiated kernel; the weighted
/// result is then differentiated in `z` by central differences of step `h`.
/// Every stencil point is integrated with the node count at which the centre
/// converged, so the quadrature error varies smoothly across the stencil and
/// the residual is dominated by the `O(h²)` truncation term.
pub fn alpha_laplacian_residual<T: Real>(alpha: Alpha<T>, fstar: &BoundaryData<T>, z: DiskPoint<T>, h: T) -> Result<T> {
    if !(h > T::zero()) || !(z.radius() + T::lit(2.0) * h < T::one()) {
        return Err(Error::domain(format!("stencil of step {h} around |z| = {} leaves the disk", z.radius())));
    }
    let a = alpha.value();
    let centre = derivative_pair_report(alpha, fstar, z, &QuadratureConfig::default())?;
    let n = 2 * centre.nodes_used;
    let weighted_dbar = |w: Complex<T>| -> Result<Complex<T>> {
        let v = integrate_periodic_fixed(derivative_integrand(a, fstar, w), n)?;
        Ok(v[1] * one_minus_sq(w).powf(-a))
    };
    let zc = z.to_complex();
    let hx = Complex::new(h, T::zero());
    let hy = Complex::new(T::zero(), h);
    let two_h = T::lit(2.0) * h;
    let gx = (weighted_dbar(zc + hx)? - weighted_dbar(zc - hx)?) / two_h;
    let gy = (weighted_dbar(zc + hy)? - weighted_dbar(zc - hy)?) / two_h;
    // ∂_z = (∂_x - i ∂_y)/2
    let dz = (gx - gy * Complex::new(T::zero(), T::one())) * T::lit(0.5);
    Ok(dz.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> Alpha<f64> {
        Alpha::new(a).unwrap()
    }

    fn pt(re: f64, im: f64) -> DiskPoint<f64> {
        DiskPoint::new(re, im).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn disk_point_rejects_boundary_and_outside() {
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.8, 0.6).is_err());
        assert!(DiskPoint::new(1.5, 0.0).is_err());
        assert!(DiskPoint::new(0.5, f64::NAN).is_err());
        assert!(DiskPoint::new(0.6, 0.79).is_ok());
    }

    #[test]
    fn kernel_at_origin_is_one() {
        for a in [-0.5, 0.0, 2.0] {
            let p = poisson_kernel(alpha(a), DiskPoint::origin());
            assert!((p - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn alpha_zero_is_classical_poisson_kernel() {
        let z = pt(0.3, -0.45);
        let p = poisson_kernel(alpha(0.0), z);
        let zc = z.to_complex();
        let want = (1.0 - zc.norm_sqr()) / (c(1.0, 0.0) - zc).norm_sqr();
        assert!((p.re - want).abs() < 1e-14);
        assert!(p.im.abs() < 1e-15);
    }

    #[test]
    fn kernel_matches_defining_quotient() {
        let z = pt(0.5, 0.0);
        assert!((poisson_kernel(alpha(2.0), z) - c(6.75, 0.0)).norm() < 1e-13);
        // generic point against the literal formula with principal powers
        let (a, zc) = (0.7, c(-0.2, 0.6));
        let one = c(1.0, 0.0);
        let want = (1.0 - zc.norm_sqr()).powf(a + 1.0) / ((one - zc) * (one - zc.conj()).powf(a + 1.0));
        assert!((poisson_kernel(alpha(a), pt(zc.re, zc.im)) - want).norm() < 1e-13);
    }

    #[test]
    fn real_kernel_values() {
        let z = pt(0.2, 0.3);
        assert!((real_kernel(alpha(0.0), z) - poisson_kernel(alpha(0.0), z).re).abs() < 1e-14);
        assert!((real_kernel(alpha(1.3), DiskPoint::origin()) - c_alpha(alpha(1.3))).abs() < 1e-15);
        assert!((real_kernel(alpha(2.0), pt(0.5, 0.0)) - 3.375).abs() < 1e-13);
    }

    #[test]
    fn constant_data_has_vanishing_derivatives_near_the_boundary() {
        let one = BoundaryData::constant(Complex::new(0.5, 0.0));
        for a in [-0.9, 0.0, 5.0] {
            let z = DiskPoint::from_polar(0.99, 2.0).unwrap();
            let d = derivative_pair(alpha(a), &one, z, &QuadratureConfig::default()).unwrap();
            assert!(d.norm < 1e-8, "{d:?}");
        }
    }

    #[test]
    fn derivative_moduli_at_origin() {
        for a in [-0.5, 0.0, 1.5] {
            for t in [0.0, 1.0, 4.0] {
                let (d, d_bar) = kernel_derivatives(alpha(a), DiskPoint::origin(), t);
                assert!((d_bar.norm() - (1.0 + a)).abs() < 1e-14);
                assert!((d.norm() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn derivative_of_classical_kernel_at_half() {
        let (_, d_bar) = kernel_derivatives(alpha(0.0), pt(0.5, 0.0), 0.0);
        assert!((d_bar.norm() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn kernel_derivatives_match_finite_differences() {
        let h = 1e-6;
        for (a, zc, t) in [(0.0, c(0.5, 0.0), 0.0), (1.7, c(0.2, -0.5), 0.8), (-0.6, c(-0.4, 0.3), 2.9)] {
            let p = |w: Complex<f64>| kernel_at(a, w * Complex::from_polar(1.0, -t));
            let px = (p(zc + h) - p(zc - h)) / (2.0 * h);
            let py = (p(zc + c(0.0, h)) - p(zc - c(0.0, h))) / (2.0 * h);
            let fd_z = (px - py * c(0.0, 1.0)) * 0.5;
            let fd_zbar = (px + py * c(0.0, 1.0)) * 0.5;
            let (d, d_bar) = kernel_derivatives(alpha(a), pt(zc.re, zc.im), t);
            assert!((d - fd_z).norm() < 1e-7, "{d} vs {fd_z}");
            assert!((d_bar - fd_zbar).norm() < 1e-7, "{d_bar} vs {fd_zbar}");
        }
    }

    #[test]
    fn solver_constant_and_identity() {
        let one = BoundaryData::constant(c(1.0, 0.0));
        let ident = BoundaryData::from_modes(&[(1, c(1.0, 0.0))]).unwrap();
        for a in [0.0, 0.5, 2.0] {
            for z in [pt(0.0, 0.0), pt(0.3, 0.0), pt(0.0, 0.8)] {
                let f = solve_dirichlet(alpha(a), &one, z, &cfg()).unwrap();
                assert!((f - c(1.0, 0.0)).norm() < 1e-10);
                let f = solve_dirichlet(alpha(a), &ident, z, &cfg()).unwrap();
                assert!((f - z.to_complex()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn solver_cosine_data_is_real_part() {
        let cos = BoundaryData::from_modes(&[(1, c(0.5, 0.0)), (-1, c(0.5, 0.0))]).unwrap();
        let f = solve_dirichlet(alpha(0.0), &cos, pt(0.5, 0.0), &cfg()).unwrap();
        assert!((f - c(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn derivative_pair_basic_cases() {
        let one = BoundaryData::constant(c(1.0, 0.0));
        let d = derivative_pair(alpha(1.5), &one, pt(0.3, 0.2), &cfg()).unwrap();
        assert!(d.d_z.norm() < 1e-10 && d.d_zbar.norm() < 1e-10);
        let ident = BoundaryData::from_modes(&[(1, c(1.0, 0.0))]).unwrap();
        let d = derivative_pair(alpha(0.7), &ident, pt(-0.4, 0.1), &cfg()).unwrap();
        assert!((d.d_z - c(1.0, 0.0)).norm() < 1e-10);
        assert!(d.d_zbar.norm() < 1e-10);
        let cos = BoundaryData::from_modes(&[(1, c(0.5, 0.0)), (-1, c(0.5, 0.0))]).unwrap();
        let d = derivative_pair(alpha(0.0), &cos, DiskPoint::origin(), &cfg()).unwrap();
        assert!((d.d_z - c(0.5, 0.0)).norm() < 1e-12);
        assert!((d.d_zbar - c(0.5, 0.0)).norm() < 1e-12);
        assert!((d.norm - 1.0).abs() < 1e-12);
        assert!((d.norm - (d.d_z.norm() + d.d_zbar.norm())).abs() < 1e-14);
    }

    #[test]
    fn residual_small_for_constant_data() {
        let one = BoundaryData::constant(c(1.0, 0.0));
        let r = alpha_laplacian_residual(alpha(1.0), &one, pt(0.2, 0.1), 1e-3).unwrap();
        assert!(r <= 1e-6);
    }

    #[test]
    fn residual_stencil_must_stay_inside() {
        let one = BoundaryData::constant(c(1.0, 0.0));
        assert!(alpha_laplacian_residual(alpha(1.0), &one, pt(0.9, 0.0), 0.06).is_err());
        assert!(alpha_laplacian_residual(alpha(1.0), &one, pt(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn residual_for_mixed_modes() {
        let f = BoundaryData::from_modes(&[(1, c(1.0, 0.0)), (-2, c(0.3, 0.0))]).unwrap();
        let r = alpha_laplacian_residual(alpha(1.5), &f, pt(0.3, 0.0), 1e-3).unwrap();
        assert!(r <= 1e-3 * f.sup_norm(), "residual {r}");
    }

    #[test]
    fn single_precision_solver() {
        let one = BoundaryData::<f32>::constant(Complex::new(1.0, 0.0));
        let a = Alpha::new(1.0f32).unwrap();
        let z = DiskPoint::new(0.3f32, 0.2).unwrap();
        let cfg = QuadratureConfig::new(64, 1 << 12, 1e-5f32, 1e-6).unwrap();
        let f = solve_dirichlet(a, &one, z, &cfg).unwrap();
        assert!((f - Complex::new(1.0, 0.0)).norm() < 1e-4);
    }
}
