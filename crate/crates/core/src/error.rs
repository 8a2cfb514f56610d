use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {left} letters vs {right} letters")]
    AlphabetMismatch { left: u32, right: u32 },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid poset: {0}")]
    Poset(String),

    #[error("invalid tableau: {0}")]
    Tableau(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precision exhausted: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
