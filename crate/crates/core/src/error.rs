use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested bound or formula is not stated for this parameter.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("boundary degree {degree} exceeds the maximum of {max}")]
    DegreeOverflow { degree: usize, max: usize },

    #[error("sample count {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("sample count {samples} cannot resolve degree {degree} (need at least {needed})")]
    TooFewSamples {
        samples: usize,
        degree: usize,
        needed: usize,
    },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("point {0} is too close to the boundary for the requested step")]
    TooCloseToBoundary(f64),

    #[error("finite-difference step {0} underflows")]
    StepUnderflow(f64),

    #[error("ill-conditioned extraction point: {0}")]
    IllConditioned(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
