use thiserror::Error;

use crate::separation::Separation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("separation sides do not cover the vertex set (missing {missing})")]
    Cover { missing: String },

    #[error("edge {u}-{v} joins A\\B and B\\A")]
    EdgeViolation { u: usize, v: usize },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("separation {0} is not oriented")]
    Unoriented(Separation),

    #[error("profiles #{0} and #{1} are not distinguished")]
    Undistinguished(usize, usize),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line tool for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Json(_) => 2,
            Error::Resource(_) => 3,
            Error::Invariant(_) => 5,
            Error::Io(_) => 2,
            _ => 1,
        }
    }
}
