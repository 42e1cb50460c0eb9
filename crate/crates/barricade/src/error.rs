use thiserror::Error;

/// Errors produced by graph construction, file parsing, solvers, and the
/// experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Validation(String),

    #[error("node {node} out of range (graph has {count} node slots)")]
    NodeOutOfRange { node: usize, count: usize },

    #[error("node {0} has been removed from the graph")]
    NodeRemoved(usize),

    #[error("graph too large for exhaustive search: {nodes} nodes exceeds guard of {guard}")]
    SizeGuard { nodes: usize, guard: usize },

    #[error("enumeration budget exceeded: {subsets} candidate sets exceeds budget of {budget}")]
    EnumerationBudget { subsets: u128, budget: u128 },

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
