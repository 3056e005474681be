use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order n={0}: the product K_n x K_n needs n >= 3")]
    InvalidOrder(usize),

    #[error("invalid vertex ({i},{j}) for n={n}: coordinates are 1-based and must lie in [1,{n}]")]
    InvalidVertex { i: usize, j: usize, n: usize },

    #[error("invalid vertex id {id}: graph has {order} vertices (ids are 1-based)")]
    InvalidVertexId { id: usize, order: usize },

    #[error("graph is disconnected: vertex {0} is unreachable from vertex 1")]
    DisconnectedGraph(usize),

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("degenerate pair: x and y are both {0}; delta of an identical pair is always 0")]
    DegeneratePair(String),

    #[error("degenerate graph: at least two vertices are required")]
    DegenerateGraph,

    #[error("vertex set is for n={set}, graph has n={graph}")]
    SizeMismatch { set: usize, graph: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no known construction for (n={n}, k={k}); {nearest}")]
    NoKnownConstruction { n: usize, k: usize, nearest: String },

    #[error("k={k} exceeds kappa={kappa}: no weak k-resolving set exists")]
    OutOfRange { k: usize, kappa: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
