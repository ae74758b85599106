//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by geometry operations and searches.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("point coordinates must be finite")]
    NonFinitePoint,

    #[error("lambda must lie in [0, 1], got {0}")]
    LambdaOutOfRange(f64),

    #[error("arclength {s} outside [0, {max}]")]
    ArclengthOutOfRange { s: f64, max: f64 },

    #[error("operation requires two distinct points")]
    IdenticalPoints,

    #[error("split parameter {a} outside open interval (0, {d})")]
    SplitOutOfRange { a: f64, d: f64 },

    #[error("prolongation radius {k} does not exceed the distance {d}")]
    ProlongationTooShort { k: f64, d: f64 },

    #[error("point list must be nonempty")]
    EmptyPointList,

    #[error("interval bounds are inverted or non-finite")]
    InvalidInterval,

    #[error("radius must be positive and finite")]
    InvalidRadius,

    #[error("union must be a nonempty flat list of primitive sets")]
    MalformedUnion,

    #[error("union members must be closed primitives")]
    OpenPrimitiveInUnion,

    #[error("epsilon {eps} outside (0, {max}]")]
    EpsilonOutOfRange { eps: f64, max: f64 },

    #[error("points are not equidistant from the apex within tolerance")]
    NotEquidistant,

    #[error("test point does not lie strictly between the endpoints")]
    NotBetween,

    #[error("uniform convexity precondition failed: {0}")]
    UcPrecondition(&'static str),

    #[error("worst-case record does not match the check's input shape")]
    MalformedWitness,

    #[error("viewport bounds are inverted or non-finite")]
    InvalidViewport,

    #[error("search resolution must be at least 2")]
    ResolutionTooSmall,
}

pub type Result<T> = std::result::Result<T, Error>;
