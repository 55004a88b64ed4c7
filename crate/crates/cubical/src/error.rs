use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown identifier `{name}` at line {line}, column {col}")]
    UnknownIdent { name: String, line: usize, col: usize },
    #[error("non-polynomial construct at line {line}, column {col}: {msg}")]
    NonPolynomial { line: usize, col: usize, msg: String },
    #[error("sampling exhausted after {attempts} attempts: {detail}")]
    Sampling { attempts: usize, detail: String },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
