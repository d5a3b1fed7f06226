use thiserror::Error;

/// Errors produced by the algebraic and numeric routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not convertible: {0}")]
    NotConvertible(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("config error on line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
