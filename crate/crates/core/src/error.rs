use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    FieldParams(String),
    #[error("field of order {0} exceeds the supported table size")]
    FieldTooLarge(u64),
    #[error("zero element where a nonzero element is required")]
    ZeroElement,
    #[error("{0}")]
    NumberTheory(String),
    #[error("{family}: {condition}")]
    Condition { family: &'static str, condition: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("linear map is singular")]
    Singular,
    #[error("brute-force oracle is capped at 3^12 elements, got {0}")]
    OracleCap(u64),
    #[error("planarity checkers disagree: {0}")]
    CheckerDisagreement(String),
    #[error("pre-semifield has no planarity certificate")]
    Uncertified,
    #[error("pre-semifield is not planar")]
    NotPlanar,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("malformed map description: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn condition(family: &'static str, condition: impl Into<String>) -> Error {
    Error::Condition { family, condition: condition.into() }
}
