use thiserror::Error;

/// Errors surfaced by fan, building-set, and weight operations.
///
/// Every constructor validates its inputs up front; computational code after
/// that point is total, so `Internal` firing means a broken invariant, not bad
/// user input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector is not a ray direction")]
    ZeroRay,

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("ray index {index} out of range (fan has {count} rays)")]
    RayIndexOutOfRange { index: usize, count: usize },

    #[error("cone not in fan")]
    ConeNotInFan,

    #[error("a simplex fan needs at least two ground labels, got {got}")]
    GroundTooSmall { got: usize },

    #[error("oracle is desk-scale only: ground size {got} exceeds 6")]
    OracleGroundTooLarge { got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("requires n > d+2 (got d={d}, n={n})")]
    DegenerateWeightShape { d: usize, n: usize },

    #[error("render supports rank-2 fans only (got rank {got})")]
    RenderRank { got: usize },

    #[error("JSON error: {0}")]
    Json(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
