//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the symbolic and numeric kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text does not conform to the polynomial grammar.
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    /// A name in the input is not among the declared variables.
    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },

    /// Rational literal with denominator zero.
    #[error("zero denominator in literal at byte {position}")]
    ZeroDenominator { position: usize },

    /// Operation received an argument of the wrong dimension or arity.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Operation requires a nonzero polynomial.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// Variable index outside `0..nvars`.
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },

    /// Input violates a stated precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Iterative solver did not reach the requested tolerance.
    #[error("root finder did not converge: {0}")]
    NonConvergence(String),

    /// A root lies too close to the counting circle.
    #[error("root on or near the counting circle (min |p| = {min_abs:.3e}); perturb the radius")]
    BoundaryRoot { min_abs: f64 },

    /// Root paths could not be separated during tracking.
    #[error("root collision during tracking near parameter {parameter}: {message}")]
    TrackingCollision { parameter: String, message: String },

    /// A stabilization ladder was exhausted without agreement.
    #[error("no stabilization: {0}")]
    NoStabilization(String),

    /// Sampling produced too few points on the variety.
    #[error("no variety points found: {0}")]
    NoPointsFound(String),

    /// A sample set violates the promised Lipschitz bound.
    #[error(
        "samples violate the {constant}-Lipschitz hypothesis: |h({i}) - h({j})| = {value_gap:.6e} \
         over distance {point_gap:.6e}"
    )]
    LipschitzViolation {
        i: usize,
        j: usize,
        value_gap: f64,
        point_gap: f64,
        constant: f64,
    },
}

impl Error {
    /// Exit code class for the CLI: 2 = input error, 3 = numeric non-stabilization.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::ZeroDenominator { .. }
            | Error::DimensionMismatch(_)
            | Error::ZeroPolynomial
            | Error::VariableIndex { .. }
            | Error::InvalidInput(_)
            | Error::LipschitzViolation { .. } => 2,
            Error::NonConvergence(_)
            | Error::BoundaryRoot { .. }
            | Error::TrackingCollision { .. }
            | Error::NoStabilization(_)
            | Error::NoPointsFound(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
