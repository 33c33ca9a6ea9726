use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operands belong to different algebra tables")]
    TableMismatch,

    #[error("coefficient vector has length {got}, table dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid algebra table: {0}")]
    InvalidTable(String),

    #[error("element is a zero divisor or numerically singular (norm = {norm:e})")]
    NearZeroNorm { norm: f64 },

    #[error("no isomorphism found: {0}")]
    NoIsomorphismFound(String),

    #[error("denominator system has no real solution (best residual {best_residual:e})")]
    NoRealSolution { best_residual: f64 },

    #[error("numerator system is singular (condition estimate {condition:e})")]
    SingularSystem { condition: f64 },

    #[error("pole of the transfer function at omega = {omega}")]
    PoleAtFrequency { omega: f64 },

    #[error("|H| = {magnitude:e} too small at omega = {omega}; sensitivity undefined")]
    MagnitudeUnderflow { omega: f64, magnitude: f64 },

    #[error("reference sensitivity is zero or undefined at omega = {omega}")]
    DivisionByZeroSensitivity { omega: f64 },

    #[error("no lattice point of the search box admits a conversion")]
    AllPointsInfeasible,

    #[error("simplex stalled against the infeasible region")]
    StalledAtInfeasible,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse failure class, used for process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Infeasible,
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => {
                ErrorClass::Parse
            }
            Error::NoRealSolution { .. }
            | Error::SingularSystem { .. }
            | Error::AllPointsInfeasible
            | Error::StalledAtInfeasible
            | Error::NoIsomorphismFound(_) => ErrorClass::Infeasible,
            _ => ErrorClass::Numerical,
        }
    }
}
