use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("singular linear part")]
    Singular,
    #[error("points do not form an affine frame")]
    InvalidFrame,
    #[error("polynomial degree {degree} exceeds the declared bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error("integration left the domain at t = {time}")]
    LeftDomain { time: f64 },
    #[error("at least 2 steps are required, got {0}")]
    TooFewSteps(usize),
    #[error("orbit velocities do not span at the base point (isotropy not discrete)")]
    NotEtale,
    #[error("point is within {margin} of the chart boundary")]
    NearBoundary { margin: f64 },
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("strata must have rational data")]
    NonRational,
}

pub type Result<T> = std::result::Result<T, Error>;
