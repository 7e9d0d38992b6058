use thiserror::Error;

/// Errors produced by the numerical stack.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("unsupported dimension N={0}; expected 1, 2 or 3")]
    UnsupportedDimension(usize),

    #[error("grid/reduction mismatch: {0}")]
    ReductionMismatch(String),

    #[error("singular factorization at pivot index {pivot}")]
    SingularFactorization { pivot: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("converged to an invalid state: {0}")]
    InvalidState(String),

    #[error("fit window too small: {0} nodes (need at least {1})")]
    WindowTooSmall(usize, usize),

    #[error("eigenvalue iteration failed: {0}")]
    EigenFailure(String),

    #[error("shift {shift} outside the resolved grid (limit {limit})")]
    ShiftOutsideGrid { shift: f64, limit: f64 },

    #[error("assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("no sign change in bracket [{lo}, {hi}]: {what}")]
    NoSignChange { lo: f64, hi: f64, what: String },

    #[error("peaks merged into a single bump (epsilon above the two-spike regime)")]
    PeakMerger,

    #[error("under-resolved integration window: {0}")]
    UnderResolved(String),

    #[error("checkpoint format error: {0}")]
    Checkpoint(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
