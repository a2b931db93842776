//! Numerical toolkit for alpha-harmonic functions on the unit disk.
//!
//! * [`specfun`]: Gamma, Beta, Pochhammer symbols and the Gauss
//!   hypergeometric function with its Euler and quadratic transforms.
//! * [`quadrature`]: periodic trapezoidal integration plus the closed-form
//!   trigonometric integrals it is checked against.
//! * [`kernel`]: the alpha-harmonic Poisson kernel, the Dirichlet solver and
//!   derivative evaluation.
//! * [`bounds`]: Schwarz and Schwarz-Pick type bounds.
//! * [`verify`]: randomized certification of every inequality.
//!
//! The numerical core is generic over [`Real`]; the aliases below fix the
//! scalar to `f64`, which is what the accuracy contracts are stated for.

pub mod bounds;
pub mod error;
pub mod kernel;
pub mod quadrature;
pub mod scalar;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Alpha64 = specfun::Alpha<f64>;
pub type HypergeomParams64 = specfun::HypergeomParams<f64>;
pub type DiskPoint64 = kernel::DiskPoint<f64>;
pub type BoundaryData64 = kernel::BoundaryData<f64>;
pub type DerivativePair64 = kernel::DerivativePair<f64>;
pub type QuadratureConfig64 = quadrature::QuadratureConfig<f64>;
pub type BoundReport64 = bounds::BoundReport<f64>;

pub type Complex64 = num_complex::Complex<f64>;
