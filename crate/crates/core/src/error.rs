use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdsError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} outside declared range 1..={n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("edge {0}-{1} is not in the graph")]
    EdgeNotInGraph(usize, usize),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("instance too large for exhaustive search: {size} > {limit}")]
    TooLarge { size: usize, limit: usize },
}
