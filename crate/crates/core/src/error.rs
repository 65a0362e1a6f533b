use thiserror::Error;

/// Errors raised by the engine.
///
/// Resource caps are reported instead of silently truncating any enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("resource cap exceeded for {what}: {requested} > {limit}")]
    ResourceCap {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("subgroup does not stabilize the subset setwise")]
    NotStabilizing,

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("no witness exists: {0}")]
    NoWitness(String),

    #[error("search exhausted: {0}")]
    NotFound(String),

    #[error("unsupported leaf: {0}")]
    UnsupportedLeaf(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn cap(what: &'static str, requested: u128, limit: u128) -> Self {
        Error::ResourceCap {
            what,
            requested,
            limit,
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
