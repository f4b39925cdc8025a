use thiserror::Error;

/// Errors raised by the curvature toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("complex dimension {0} is outside the supported range 1..=8")]
    UnsupportedDimension(usize),

    #[error("tensor violates Kähler symmetries ({count} violations, first: {first})")]
    SymmetryViolation { count: usize, first: String },

    #[error("vectors are not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("matrix is not skew-symmetric (deviation {deviation:.3e})")]
    NotSkew { deviation: f64 },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("parameter {param} outside the valid range [{min}, {max}]")]
    OutOfRange { param: f64, min: f64, max: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Jacobi field vanishes at eta = {at:.10} (conjugate/focal point before {requested:.10})")]
    ConjugatePoint { at: f64, requested: f64 },

    #[error("calibration gate failed: {0}")]
    Calibration(String),

    #[error("bisection bracket does not straddle the sign change: {0}")]
    Bracket(String),

    #[error("numerically singular metric at the evaluation point (min eigenvalue {0:.3e})")]
    SingularMetric(f64),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
