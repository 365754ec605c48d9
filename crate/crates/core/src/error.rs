use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A denominator function vanishes (or nearly so) where a ratio is needed.
    #[error("pole/zero: {0}")]
    PoleOrZero(String),

    /// A tolerance could not be met within the configured work limits.
    #[error("resource limit: {what} (achieved bound {achieved:e})")]
    Resource { what: String, achieved: f64 },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, achieved: f64) -> Self {
        Error::Resource {
            what: what.into(),
            achieved,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            _ => 2,
        }
    }
}
