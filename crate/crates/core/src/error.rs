use thiserror::Error;

/// Errors raised by the engine.
///
/// `Consistency` and the three table violations signal a bug upstream of the
/// caller (a normalization or implementation error), never bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {what} is {actual}, bound is {bound}")]
    Capacity {
        what: String,
        actual: String,
        bound: String,
    },

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("not Weyl-invariant: coefficient of x^{left} is {left_coeff} but x^{right} has {right_coeff}")]
    Invariance {
        left: String,
        left_coeff: String,
        right: String,
        right_coeff: String,
    },

    #[error("polynomiality violation at nu = {nu}: {poly} has negative q-exponents")]
    Polynomiality { nu: String, poly: String },

    #[error("dimension violation at nu = {nu}: degree {degree} but <lambda+nu, rho> = {expected}")]
    Dimension {
        nu: String,
        degree: i64,
        expected: i64,
    },

    #[error("positivity violation: {poly} has (q-1)-expansion {expansion:?}")]
    Positivity { poly: String, expansion: Vec<String> },

    #[error("Euler characteristic violation at nu = {nu}: L(1) = {value}")]
    EulerCharacteristic { nu: String, value: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, actual: impl ToString, bound: impl ToString) -> Self {
        Error::Capacity {
            what: what.into(),
            actual: actual.to_string(),
            bound: bound.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
