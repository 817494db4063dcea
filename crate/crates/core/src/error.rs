use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed graph6 input; `offset` is the byte position of the problem.
    #[error("graph6 format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("divisibility: {0}")]
    Divisibility(String),

    /// The request exceeds a configured size limit of an exhaustive backend.
    #[error("capability limit: {0}")]
    Capability(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("certificate failure at {config}: {detail}")]
    CertificateFailure { config: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
