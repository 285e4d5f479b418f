use thiserror::Error;

/// Errors surfaced by the library and mapped onto CLI exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("Weingarten pole at cell (row {row}, col {col}): z + {col} - {row} = 0")]
    Pole { row: usize, col: usize },

    #[error("moment order c = {c} violates c < m - n + 1 = {bound} (the moment is infinite)")]
    ConditionViolated { c: usize, bound: usize },

    #[error("no hits at a = {a:e} after {trials} trials; increase trials or raise the grid")]
    InsufficientTrials { a: f64, trials: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for this error class. `2` is reserved for usage errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) => 3,
            Error::Domain(_) => 4,
            Error::Pole { .. } => 4,
            Error::ConditionViolated { .. } => 5,
            Error::Numeric(_) => 6,
            Error::InsufficientTrials { .. } => 7,
            Error::Io(_) | Error::Json(_) => 8,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
