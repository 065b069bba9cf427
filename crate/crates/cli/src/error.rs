use thiserror::Error;

/// Exit-code contract: 0 ok, 1 verification failure, 2 input error,
/// 3 domain error.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed files, expressions, or arguments.
    #[error("{0}")]
    Input(String),
    /// Well-formed input outside an operation's domain (not in R+,
    /// nonzero denominator, dimension mismatch, ...).
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError::Input(message.into())
    }

    pub fn domain(message: impl Into<String>) -> CliError {
        CliError::Domain(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}
