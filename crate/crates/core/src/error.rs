use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("graph too large for exhaustive enumeration: {n} vertices (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid experiment config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A parse failure, tagged with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    Malformed(String),
    OutOfRange { vertex: usize, n: usize },
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    EdgeCount { declared: usize, found: usize },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing \"n m\" header"),
            ParseErrorKind::Malformed(line) => write!(f, "malformed line {line:?}"),
            ParseErrorKind::OutOfRange { vertex, n } => {
                write!(f, "vertex id {vertex} out of range (n = {n})")
            }
            ParseErrorKind::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            ParseErrorKind::DuplicateEdge(u, v) => write!(f, "duplicate edge {{{u}, {v}}}"),
            ParseErrorKind::EdgeCount { declared, found } => {
                write!(f, "header declares {declared} edges but {found} were listed")
            }
        }
    }
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}
