use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("{what} exceeds cap of {limit} (got {got})")]
    CapExceeded { what: &'static str, limit: usize, got: usize },
    #[error("faces have mixed arities {0} and {1}")]
    MixedArity(usize, usize),
    #[error("frontier inconsistency at vertex {vertex}: {message}")]
    Frontier { vertex: usize, message: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
