//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("word is not alternating: '{0}'")]
    NotAlternating(String),

    #[error("invalid word syntax: '{0}' (expected 'e' or a string over 'l'/'r')")]
    WordSyntax(String),

    #[error("invalid index syntax: '{0}' (expected '(i,m)' with i in 0..=1)")]
    IndexSyntax(String),

    #[error("unknown element '{0}'")]
    UnknownElement(String),

    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },

    #[error("model mismatch: '{0}' vs '{1}'")]
    ModelMismatch(String, String),

    #[error("model '{0}' is not a valid lattice model; run the validator for details")]
    InvalidModel(String),

    #[error("invalid depth {0}: must be at least 1")]
    InvalidDepth(usize),

    #[error("malformed ladder: {0}")]
    MalformedLadder(String),

    #[error("dirty ladder: {0}")]
    DirtyLadder(String),

    #[error("inconsistent ladder: {0}")]
    InconsistentLadder(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
