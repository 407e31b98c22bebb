use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not planar")]
    NonPlanar,
    #[error("inserting {0}->{1} would break planarity")]
    NonPlanarInsert(VertexId, VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("no edge {0}->{1}")]
    UnknownEdge(VertexId, VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("invalid r = {r} for n = {n}")]
    InvalidR { r: usize, n: usize },
    #[error("query vertex {0} is not a boundary vertex of the piece")]
    NotBoundary(VertexId),
    #[error("query set is not closed: {0} lies in its path net")]
    NotClosed(VertexId),
    #[error("certificate of piece {0} is stale")]
    StaleCertificate(usize),
    #[error("{0}")]
    Unsupported(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
