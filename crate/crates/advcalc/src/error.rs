use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid interval: lo {lo} > hi {hi}")]
    InvalidInterval { lo: String, hi: String },

    #[error("empty set has no distance")]
    EmptySet,

    #[error("incompatible lattices: {0}")]
    IncompatibleLattice(String),

    #[error("domain overflow: {0}")]
    DomainOverflow(String),

    #[error("composition not exact on this lattice")]
    CompositionNotExact,

    #[error("exhaustive budget exceeded: {0} cells > {1}")]
    BudgetExceeded(usize, usize),

    #[error("atom outside domain: {0}")]
    AtomOutsideDomain(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid radius: {0}")]
    InvalidRadius(String),

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("line disjoint from body")]
    LineMissesBody,

    #[error("invalid convex body: {0}")]
    InvalidBody(String),

    #[error("chain is not decreasing at index {0}")]
    NotDecreasing(usize),

    #[error("string outside universe: {0:?}")]
    OutsideUniverse(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("render error: {0}")]
    Render(String),
}

pub type Result<T> = std::result::Result<T, Error>;
