use thiserror::Error;

/// Every failure a geometric, clustering, or I/O operation can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("DuplicatePoints: points {first} and {second} coincide")]
    DuplicatePoints { first: usize, second: usize },
    #[error("TooFewPoints: need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("KOutOfRange: k = {k} is outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("NonpositiveEpsilon: epsilon must be positive and finite, got {0}")]
    NonpositiveEpsilon(f64),
    #[error("BadSectorCount: sector count must be at least 1, got {0}")]
    BadSectorCount(usize),
    #[error("TargetOutOfRange: target = {target} is outside 1..={max}")]
    TargetOutOfRange { target: usize, max: usize },
    #[error("InvalidParameter: {name}: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("NonFiniteCoordinate: point {0} has a NaN or infinite coordinate")]
    NonFiniteCoordinate(usize),
    #[error("ParseError at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("EmptyInput: no points found")]
    EmptyInput,
}

impl Error {
    /// Stable identifier used in CLI diagnostics and the HTTP error envelope.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DuplicatePoints { .. } => "DuplicatePoints",
            Error::TooFewPoints { .. } => "TooFewPoints",
            Error::KOutOfRange { .. } => "KOutOfRange",
            Error::NonpositiveEpsilon(_) => "NonpositiveEpsilon",
            Error::BadSectorCount(_) => "BadSectorCount",
            Error::TargetOutOfRange { .. } => "TargetOutOfRange",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::NonFiniteCoordinate(_) => "NonFiniteCoordinate",
            Error::Parse { .. } => "ParseError",
            Error::EmptyInput => "EmptyInput",
        }
    }

    pub(crate) fn invalid(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
