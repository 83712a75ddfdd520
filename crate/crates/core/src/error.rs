use thiserror::Error;

use crate::hypercore::EdgeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("hyperedge must contain at least 2 distinct vertices, got {0}")]
    EdgeTooSmall(usize),

    #[error("hyperedge weight must be positive and finite, got {0}")]
    BadWeight(f64),

    #[error("duplicate edge id {0:?}")]
    DuplicateEdgeId(EdgeId),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("vector length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),

    #[error("{what} supports at most {limit} elements, got {got}")]
    SizeGuard {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("ground set needs at least 2 elements, got {0}")]
    GroundTooSmall(usize),

    #[error("set is not contained in the ground set")]
    NotSubset,

    #[error("hypergraph is disconnected and a positive minimum cut was required")]
    Disconnected,

    #[error("cut has zero weight; nothing to sample")]
    EmptyCut,

    #[error("pair query needs two distinct vertices, got {0} twice")]
    SamePair(usize),

    #[error("oracle capability `{0}` is disabled on this handle")]
    CapabilityViolation(&'static str),

    #[error("edge {0:?} crosses no traced cut but was drawn")]
    UntracedEdge(EdgeId),

    #[error("pair estimates sum to zero on a cut of weight {0}")]
    EstimatorFailure(f64),

    #[error("cut weight {0} is not an integer; use weighted sampling")]
    NonIntegralCut(f64),

    #[error("vertices {0} and {1} lie in different components")]
    DisconnectedPair(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("transcript mismatch at entry {index}: expected `{expected}`, got `{got}`")]
    TranscriptMismatch {
        index: usize,
        expected: String,
        got: String,
    },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
