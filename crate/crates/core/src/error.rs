use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("numerical failure: {message} (best residual {residual:e})")]
    Numerical { message: String, residual: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction failed: {message}")]
    Construction {
        message: String,
        /// Offending spectral value, when the failure has one (e.g. the
        /// smallest eigenvalue of a matrix that had to be positive definite).
        value: Option<f64>,
    },

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
