use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("sample: no observations")]
    EmptySample,
    #[error("sample: observation {index} is not finite ({value})")]
    NonFiniteObservation { index: usize, value: f64 },
    #[error("mixture: no components")]
    EmptyMixture,
    #[error("coefficient {index}: not finite ({value})")]
    NonFiniteCoefficient { index: usize, value: f64 },
    #[error("{field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
    #[error("grid: support is a single point, no spectral representation")]
    DegenerateGrid,
    #[error("grid: support bounds are not finite")]
    NonFiniteBounds,
    #[error("x = {x}: outside the period window [{lo}, {hi}]")]
    OutsideWindow { x: f64, lo: f64, hi: f64 },
    #[error("estimate: no density values")]
    MissingDensity,
    #[error("enumeration: {count} atoms exceeds the limit of {limit}")]
    EnumerationTooLarge { count: f64, limit: usize },
    #[error("regression: {0}")]
    Regression(String),
}

impl Error {
    pub(crate) fn param(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
