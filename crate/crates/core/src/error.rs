use thiserror::Error;

/// Errors raised across the library.
///
/// Each variant maps onto one process exit code of the command-line front
/// end: input problems exit with 1, failed hypotheses with 2 and
/// contradictory bounds with 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("hypothesis `{name}` failed: {detail}")]
    Hypothesis { name: String, detail: String },

    #[error("inconsistent bounds on {fact}: {existing} conflicts with {incoming}")]
    Inconsistency {
        fact: String,
        existing: String,
        incoming: String,
    },

    #[error("oracle refused input: ambient dimension {dim} exceeds {limit}")]
    OracleTooLarge { dim: usize, limit: usize },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn hypothesis(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            name: name.into(),
            detail: detail.into(),
        }
    }

    /// Exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension(_) | Error::Input(_) | Error::OracleTooLarge { .. } => 1,
            Error::Hypothesis { .. } => 2,
            Error::Inconsistency { .. } => 3,
        }
    }

    /// Short machine-readable kind tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Input(_) => "input",
            Error::Hypothesis { .. } => "hypothesis",
            Error::Inconsistency { .. } => "inconsistency",
            Error::OracleTooLarge { .. } => "oracle_too_large",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
