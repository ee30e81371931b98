use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller broke a precondition (bad arguments, mismatched ground sets, ...).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    /// Parameters are well-formed but the object cannot exist (e.g. `n < 2s + t - 1`).
    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A case analysis that must always succeed did not. Any occurrence is a bug.
    #[error("internal defect: {0}")]
    Defect(String),

    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }
}
