use thiserror::Error;

/// Errors raised by the algebra, the groupoid machinery and the I/O layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("splitting error: {0}")]
    Splitting(String),
    #[error("not composable: {0}")]
    Composability(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("not affine: {0}")]
    NotAffine(String),
    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },
    #[error("unknown {what}: {name}")]
    Unknown { what: String, name: String },
}

impl Error {
    pub(crate) fn arity(msg: impl Into<String>) -> Self {
        Error::Arity(msg.into())
    }

    pub(crate) fn degree(msg: impl Into<String>) -> Self {
        Error::Degree(msg.into())
    }

    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
