//! Error type shared by all engine modules.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor argument violates its documented constraint.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// The real part of a moment generating function argument lies outside
    /// the finiteness domain of the driving process.
    #[error("argument with real part {re_u} outside mgf domain ({lo}, {hi})")]
    DomainViolation { re_u: f64, lo: f64, hi: f64 },

    /// The argument is inside the mgf domain but so close to its boundary
    /// that the characteristic exponent is numerically unreliable.
    #[error("argument with real part {re_u} within relative {epsilon} of mgf domain boundary")]
    IllConditioned { re_u: f64, epsilon: f64 },

    /// A discount curve or tenor structure failed validation.
    #[error("curve validation: {0}")]
    CurveValidation(String),

    /// The initial term structure cannot be reproduced by any admissible
    /// parameter within the mgf domain.
    #[error(
        "calibration infeasible at tenor index {index}: target ratio {target} \
         exceeds achievable maximum {achievable}"
    )]
    CalibrationInfeasible {
        index: usize,
        target: f64,
        achievable: f64,
    },

    /// An operation precondition does not hold (for example a pricing call
    /// on a non strictly decreasing parameter pair).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An instrument index is outside the tenor structure.
    #[error("index out of range: {what} = {index}, valid range {lo}..={hi}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        lo: usize,
        hi: usize,
    },

    /// Bracket expansion for a root or extremum search did not terminate.
    #[error("bracketing failure: {0}")]
    BracketFailure(String),

    /// Adaptive quadrature could not meet the requested tolerance; the best
    /// estimate and its error bound are carried along.
    #[error(
        "integration accuracy not met: best estimate {estimate}, \
         error bound {error_bound}, requested {requested}"
    )]
    IntegrationAccuracy {
        estimate: f64,
        error_bound: f64,
        requested: f64,
    },

    /// No admissible dampening parameter exists for the Fourier contour.
    #[error("no admissible dampening parameter: {0}")]
    NoAdmissibleDampening(String),

    /// A numerical postcondition failed (calibration residual, etc).
    #[error("numerical failure: {0}")]
    Numerical(String),
}
