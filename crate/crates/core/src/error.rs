use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("genus mismatch: expected {expected}, found {found}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("invalid slope template: {0}")]
    InvalidTemplate(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid cut system: {0}")]
    InvalidCutSystem(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("outside classified range: {0}")]
    OutsideClassifiedRange(String),
    #[error("pick (gamma {gamma}, beta {beta}) is not primitive: {reason}")]
    NotPrimitive { gamma: usize, beta: usize, reason: String },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
