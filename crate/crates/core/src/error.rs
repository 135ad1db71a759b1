use thiserror::Error;

/// Errors raised by the numerical kernels and the physics layers built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field value {0} is outside the domain phi > -1")]
    FieldDomain(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("quadrature did not reach tolerance: value {value:e}, error estimate {error_estimate:e} after {evaluations} evaluations")]
    QuadratureFailed {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("non-finite function value at x = {0}")]
    NonFinite(f64),

    #[error("no sign change on [{a}, {b}]: f(a) = {fa:e}, f(b) = {fb:e}")]
    NoSignChange { a: f64, b: f64, fa: f64, fb: f64 },

    #[error("principal value integral does not cancel near the pole at {0}")]
    DivergentPrincipalValue(f64),

    #[error("minimizer collapsed onto the lower boundary phi = {0}")]
    BoundaryCollapse(f64),

    #[error("eigensolver failed: {0}")]
    Eigen(String),

    #[error("{0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
