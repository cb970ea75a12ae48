use thiserror::Error;

/// Errors produced by geometry, exact computation, dataset generation and the solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point must have at least one coordinate")]
    EmptyPoint,

    #[error("coordinate {index} is {value}; coordinates must be finite and nonnegative")]
    InvalidCoordinate { index: usize, value: f64 },

    #[error("front must contain at least one point")]
    EmptyFront,

    #[error("box index {index} out of bounds for front of size {len}")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("inclusion-exclusion supports at most {max} boxes, got {n}")]
    TooManyBoxesForInclusionExclusion { n: usize, max: usize },

    #[error("front must contain at least {required} points, got {n}")]
    FrontTooSmall { n: usize, required: usize },

    #[error("epsilon must be strictly positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("delta must lie in (0, 1), got {0}")]
    InvalidDelta(f64),

    #[error("gamma must lie in (0, 1], got {0}")]
    InvalidGamma(f64),

    #[error("alpha must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("round shrink factor must lie in (0, 1), got {0}")]
    InvalidRoundShrink(f64),

    #[error("HSO cost constant must be strictly positive, got {0}")]
    InvalidHsoCostConstant(f64),

    #[error("dataset size and dimension must both be at least 1 (n={n}, d={d})")]
    InvalidDatasetShape { n: usize, d: usize },

    #[error("resampling budget of {budget} redraws exhausted while removing dominated points")]
    ResampleBudgetExhausted { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
