use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("clause width {found} not supported here (expected {expected})")]
    Width { expected: usize, found: usize },

    #[error("instance too large: n = {n} exceeds the limit of {limit} variables")]
    TooLarge { n: usize, limit: usize },

    #[error("rule `{rule}` requires l = {expected} candidates, got {found}")]
    Arity {
        rule: String,
        expected: usize,
        found: usize,
    },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("no bias p < 1 on the search grid gives a positive first-moment exponent at r = {r}")]
    NotFound { r: f64 },

    #[error("DIMACS parse error on line {line}: {msg}")]
    Dimacs { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
