use thiserror::Error;

/// Errors produced by the geometry, iteration and rendering routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate or length is not finite")]
    NonFinite,
    #[error("degenerate triangle: vertices are collinear or coincident")]
    DegenerateTriangle,
    #[error("circle radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("point is off the circle by {deviation} (radius {radius})")]
    OffCircle { deviation: f64, radius: f64 },
    #[error("lines are parallel")]
    ParallelLines,
    #[error("side lengths {0}, {1}, {2} violate the strict triangle inequality")]
    TriangleInequalityViolation(f64, f64, f64),
    #[error("invalid arc triple: {0}")]
    InvalidArcs(String),
    #[error("drift is defined for even ranks only, got rank {0}")]
    OddRank(u32),
    #[error("triangles do not share a circumcircle")]
    MismatchedCircle,
    #[error("construction collapsed to a point")]
    DegenerateOutput,
    #[error("scene has no elements")]
    EmptyScene,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
