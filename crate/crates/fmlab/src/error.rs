use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vocabulary mismatch: {0}")]
    VocabularyMismatch(String),
    #[error("unknown relation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` has arity {expected}, got {found} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("duplicate relation symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("free variable `{0}` not covered by the assignment")]
    UncoveredVariable(String),
    #[error("{0}")]
    Domain(String),
    #[error("input too large for exact mode: {0}")]
    TooLarge(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
