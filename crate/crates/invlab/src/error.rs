use thiserror::Error;

/// Errors surfaced by the public API.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unknown model id `{0}`")]
    UnknownModel(String),
    #[error("unknown rule id `{0}`")]
    UnknownRule(String),
    #[error("invariance kind `{kind}` is not applicable to model `{model}`: {constraint}")]
    InapplicableKind {
        kind: String,
        model: String,
        constraint: String,
    },
    #[error("matrix is not a rotation: {0}")]
    NotARotation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
