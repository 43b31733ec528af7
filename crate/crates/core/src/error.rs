use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{u}{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("source set is empty")]
    EmptySources,

    #[error("scheme has {got} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("graph is not nice: component {component:?} has exactly two vertices")]
    NotNice { component: Vec<usize> },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search box of {size} schemes exceeds the limit of {limit}")]
    BoxTooLarge { size: u128, limit: u128 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("scheme parse error: {0}")]
    SchemeParse(String),

    #[error("report error: {0}")]
    Report(String),
}
