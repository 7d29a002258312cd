use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} contains a non-finite value")]
    NonFinite(&'static str),

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("dimension {n} is below the minimum {min} for {what}")]
    DimensionTooSmall { what: String, n: usize, min: usize },

    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),

    #[error("structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("failed to parse {path}: {msg}")]
    Parse { path: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
