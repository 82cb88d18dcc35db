use thiserror::Error;

/// Errors raised by the exact kernel, the plane solver and the enumeration engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative radicand {0} has no real square root")]
    InvalidRadicand(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("plane normal is the zero vector")]
    ZeroNormal,
    #[error("the three points are collinear")]
    CollinearPoints,
    #[error("support is degenerate: no orthogonal plane triple through it")]
    DegenerateSupport,
    #[error("two points of a support pair coincide")]
    ZeroDifferenceVector,
    #[error("auxiliary vectors are dependent or their span contains a difference vector")]
    AuxiliaryVectorsInvalid,
    #[error("vectors do not form an orthogonal basis")]
    DegenerateBasis,
    #[error("point set has {0} points, which is not a positive multiple of 8")]
    InputSizeError(usize),
    #[error("point set contains duplicate points {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error(
        "general position violated: point {point} lies on plane H{} of support {support}",
        plane + 1
    )]
    GeneralPositionViolation {
        /// Human-readable rendering of the support triple, e.g. `321 [0,1,2] [3,4] [5]`.
        support: String,
        point: usize,
        plane: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("coordinate of point {0} is outside the supported range")]
    CoordinateRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
