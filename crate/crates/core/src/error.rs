use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("position {pos} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { pos: i64, lo: i64, hi: i64 },

    #[error("interval [{lo}, {hi}] is not contained in the domain [{dom_lo}, {dom_hi}]")]
    IntervalOutOfDomain {
        lo: i64,
        hi: i64,
        dom_lo: i64,
        dom_hi: i64,
    },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("color id {id} has no single-character token (use the JSON form)")]
    Unrepresentable { id: u16 },

    #[error("residue {residue} of pattern `{name}` is unassigned")]
    UnassignedResidue { residue: u32, name: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("brute-force oracle supports n <= {ceiling}, got n = {n}")]
    OracleCeiling { n: u32, ceiling: u32 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
