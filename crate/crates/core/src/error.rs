use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// A materialization would exceed the configured vertex (or pair) budget.
    #[error("budget exceeded: {what} would need {required} but the limit is {limit}")]
    Budget {
        what: &'static str,
        required: String,
        limit: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An internal invariant failed. Always a bug in a construction.
    #[error("consistency error: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn budget(what: &'static str, required: impl ToString, limit: impl ToString) -> Self {
        Error::Budget {
            what,
            required: required.to_string(),
            limit: limit.to_string(),
        }
    }
}
