use thiserror::Error;

use crate::imset::FamilyVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error (line {line}): {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop declared at node {0}")]
    SelfLoop(usize),

    #[error("node {node} out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("node count {0} out of range 1..=16")]
    InvalidNodeCount(usize),

    #[error("{what} supports n <= {max}, got n = {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("node count mismatch: {0} vs {1}")]
    NodeCountMismatch(usize, usize),

    #[error("edge {0} -> {1} is not in the graph")]
    EdgeAbsent(usize, usize),

    #[error("edge {0} -> {1} is not covered")]
    EdgeNotCovered(usize, usize),

    #[error("graph contains a directed cycle")]
    Cyclic,

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("invalid imset: {0}")]
    InvalidImset(String),

    #[error("vector is not in the kernel of phi (residual has {} nonzero coordinates)", .residual.support_len())]
    NotInKernel { residual: FamilyVector },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("fiber search space exceeds {limit} candidates (reached {explored})")]
    SearchSpaceExceeded { explored: u64, limit: u64 },

    #[error("no column labeled {0}")]
    MissingLabel(String),

    #[error("degenerate Givens pivot: entry ({row}, {label}) is zero")]
    DegeneratePivot { row: usize, label: String },

    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    #[error("factor matrix is rank deficient")]
    RankDeficient,

    #[error("I - Lambda is singular")]
    SingularSem,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
