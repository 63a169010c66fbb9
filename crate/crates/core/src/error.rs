use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("radius must be finite and positive, got {0}")]
    InvalidRadius(f64),

    #[error("exponent must be finite, got {0}")]
    InvalidLambda(f64),

    #[error("invalid base points: {0}")]
    InvalidBasePoints(String),

    #[error("base points are not a regular polygon")]
    NotRegular,

    #[error("{what} = {value} outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("derivative is singular: probe coincides with base point at angle {angle}")]
    Singular { angle: f64 },

    #[error("k = {k} outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("angular tolerance {0} outside [1e-12, 1e-2]")]
    InvalidTolerance(f64),

    #[error("objective is unbounded above (pole at a base point)")]
    Unbounded,

    #[error("exponential sum is identically zero on the probe grid")]
    IdenticallyZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
