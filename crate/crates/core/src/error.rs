use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("element is not a unit: {0}")]
    NotUnit(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unsupported for this base: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not natural: {0}")]
    NotNatural(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

