use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("too many generators: {0}")]
    Capacity(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operands belong to different rings")]
    ContextMismatch,
    #[error("cannot invert: {0}")]
    NotInvertible(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported matrix kind: {0}")]
    Kind(String),
    #[error("invalid parity: {0}")]
    Parity(String),
    #[error("invalid minor symbol: {0}")]
    Minor(String),
    #[error("missing assignment for `{0}`")]
    MissingAssignment(String),
    #[error("resource cap of {0} term operations exceeded")]
    ResourceCap(u64),
    #[error("rewriting fuel exhausted at term {0}")]
    FuelExhausted(String),
    #[error("outside the Laurent-exterior subring: {0}")]
    NotLaurent(String),
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
