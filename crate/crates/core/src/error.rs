use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vertex {0} out of range")]
    InvalidVertex(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("modulus must be at least {min}, got {got}")]
    InvalidModulus { min: u32, got: u32 },

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("permutation is not a graph automorphism")]
    NotAutomorphism,

    #[error("group is not transitive")]
    Intransitive,

    #[error("degree {degree} exceeds the configured ceiling {ceiling}")]
    ResourceLimit { degree: usize, ceiling: usize },

    #[error("automorphism does not lift: {0}")]
    NoLift(String),

    #[error("lift validation failed on arc ({0}, {1})")]
    LiftValidation(usize, usize),

    #[error("invalid voltage assignment: {0}")]
    InvalidVoltage(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
