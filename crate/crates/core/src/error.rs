use thiserror::Error;

use crate::multigraph::{CutSpec, EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),

    #[error("identifier already in use: {0}")]
    DuplicateId(String),

    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: VertexId, degree: usize },

    #[error("graph is not 3-edge-connected: found a cut of weight {}", .cut.weight())]
    NotThreeEdgeConnected { cut: CutSpec },

    #[error("graph has {0} vertices, at least 4 are required")]
    TooSmall(usize),

    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has {n} vertices, above the brute-force cap of {cap}")]
    OverCap { n: usize, cap: usize },
}

impl Error {
    pub(crate) fn rejected(msg: impl Into<String>) -> Self {
        Error::Rejected(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
