use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Diagnostic payloads are carried as `f64` regardless of the scalar type
/// the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "series did not converge within {terms} terms (partial sum {partial_sum:e}, tail estimate {tail_estimate:e})"
    )]
    SeriesNotConverged { terms: usize, partial_sum: f64, tail_estimate: f64 },

    #[error("non-finite integrand value at theta = {theta}")]
    NonFiniteIntegrand { theta: f64 },

    #[error(
        "quadrature did not converge with {nodes} nodes (estimate {value:e}, error estimate {error_estimate:e})"
    )]
    QuadratureNotConverged { nodes: usize, value: f64, error_estimate: f64 },

    #[error("invalid boundary data: {0}")]
    BoundaryFormat(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by numerical non-convergence rather than bad input.
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::SeriesNotConverged { .. } | Error::QuadratureNotConverged { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
