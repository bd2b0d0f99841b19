use thiserror::Error;

/// Errors shared across the whole library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed record: {0}")]
    MalformedRecord(String),

    #[error("graph is not bipartite (odd cycle through vertex {vertex})")]
    NotBipartite { vertex: usize },

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("unknown builtin graph `{0}`")]
    UnknownName(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not proper")]
    NotProper,

    #[error("blocks are not invariant under the group: {0}")]
    NotInvariant(String),

    #[error("cap exceeded: {what} is {value}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("group is not edge-transitive on the graph")]
    NotEdgeTransitive,

    #[error("not connected")]
    NotConnected,

    #[error("borel subgroup has a non-trivial core")]
    NotCoreFree,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
