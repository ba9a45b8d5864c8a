use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group specification invalid: {0}")]
    InvalidSpec(String),

    #[error("element does not belong to the group: {0}")]
    InvalidElement(String),

    #[error("operands come from different groups: {0}")]
    SpecMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("element budget exceeded: produced {partial} elements with cap {cap}")]
    BudgetExceeded { partial: usize, cap: usize },

    #[error("exhaustive sweep refused: {0}")]
    SweepTooLarge(String),

    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),

    #[error("solver failed to converge: {0}")]
    SolverFailure(String),

    #[error("rearrangement instance invalid: {0}")]
    InvalidInstance(String),

    #[error("internal construction failure (this falsifies the implementation, not the statement): {0}")]
    ConstructionFailure(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("seed required for heuristic path: {0}")]
    SeedRequired(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
