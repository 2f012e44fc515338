use thiserror::Error;

/// Errors produced by the hydra library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HydraError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("hyperarc {u},{v}->{w} is redundant: head lies in the body")]
    RedundantArc { u: usize, v: usize, w: usize },

    #[error("dimension mismatch: hypergraph has {hypergraph} vertices, graph has {graph}")]
    DimensionMismatch { hypergraph: usize, graph: usize },

    #[error("hydra numbers need at least three vertices, got {0}")]
    TooFewVertices(usize),

    #[error("graph has {0} isolated vertices; normalize it first")]
    IsolatedVertices(usize),

    #[error("{what}: {actual} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid path cover: {0}")]
    InvalidCover(String),

    #[error("graph is not a tree")]
    NotATree,

    #[error("no hypergraph within {max_arcs} arcs satisfies the head caps")]
    Infeasible { max_arcs: usize },

    #[error("search stopped after {nodes} nodes without a conclusive answer")]
    SearchLimit { nodes: u64 },

    #[error("formula is not a definite 3-Horn formula")]
    NotThreeHorn,

    #[error("formula is not a hydra")]
    NotHydra,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = HydraError> = std::result::Result<T, E>;
