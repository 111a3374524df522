use thiserror::Error;

/// Errors raised by graph construction, solvers and generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} has non-positive length")]
    NonPositiveLength(usize, usize),
    #[error("terminals must be distinct (s = t = {0})")]
    SameTerminals(usize),
    #[error("edge id {0} does not exist")]
    UnknownEdge(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("search interrupted by timeout")]
    Timeout,
}

impl From<crate::control::Interrupted> for Error {
    fn from(_: crate::control::Interrupted) -> Self {
        Error::Timeout
    }
}

pub type Result<T> = std::result::Result<T, Error>;
