use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(path: impl Into<String>, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: path.into(),
            msg: msg.into(),
        }
    }
}
