use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("variable index {var} out of range for {nvars} variables")]
    VarOutOfRange { var: usize, nvars: usize },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported dimension {0} (supported: 1..=3)")]
    UnsupportedDimension(usize),
    #[error("refinement budget exceeded: {0}")]
    RefinementBudget(String),
    #[error("formula references polynomial {index} but only {count} are defined")]
    FormulaReference { index: usize, count: usize },
    #[error("path leaves the cell: {0}")]
    PathLeavesCell(String),
    #[error("ambiguous stack matching between {a} and {b}: {detail}")]
    AmbiguousMatch { a: String, b: String, detail: String },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("dimension-drop violation: {lower} (dim {lower_dim}) lies in the boundary of {upper} (dim {upper_dim})")]
    DimensionDrop {
        lower: String,
        lower_dim: usize,
        upper: String,
        upper_dim: usize,
    },
    #[error("subadjacency and closure disagree on ({0}, {1})")]
    ClosureMismatch(String, String),
    #[error("unknown cell id {0}")]
    UnknownCell(String),
    #[error("not a partial order: {0}")]
    NotPoset(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
