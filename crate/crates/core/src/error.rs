use thiserror::Error;

/// Errors produced by constructions, parsers and solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed descriptor `{0}`")]
    MalformedSpec(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
