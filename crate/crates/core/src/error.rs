use thiserror::Error;

/// Errors raised by the graph, enumeration and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsdError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(usize),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("lambda = {lambda} outside 1..={n}")]
    LambdaOutOfRange { lambda: usize, n: usize },
    #[error("action set exceeds the cap of {cap} subgraphs")]
    ThetaCap { cap: usize },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("subgraph index {index} out of range (theta = {theta})")]
    InvalidIndex { index: usize, theta: usize },
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("linear program failed: {0}")]
    Lp(String),
    #[error("consistency check failed: {0}")]
    Diagnostic(String),
}

pub type Result<T, E = CsdError> = std::result::Result<T, E>;
