use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid vertex {vertex} (graph has {n} vertices)")]
    InvalidVertex { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no root")]
    NoRoot,
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("configuration has {got} entries but the graph has {expected} vertices")]
    ConfigLength { expected: usize, got: usize },
    #[error("configuration holds {0} pebbles; at most {max} are supported", max = crate::config::MAX_PEBBLES)]
    TooManyPebbles(u64),
    #[error("illegal move {from}->{to}")]
    IllegalMove { from: Vertex, to: Vertex },
    #[error("state is terminal")]
    Terminal,
    #[error("strategy fault: {0}")]
    StrategyFault(String),
    #[error("configuration outside the supported family: {0}")]
    Unsupported(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
