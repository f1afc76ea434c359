use thiserror::Error;

/// Errors raised by the geometry, volume and optimization routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {n} out of range {min}..={max}")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("direction vector has zero length")]
    ZeroDirection,

    #[error("hyperplane does not support the simplex (vertex {vertex} lies {depth:e} below it)")]
    NotSupporting { vertex: usize, depth: f64 },

    #[error("supporting hyperplane touches no vertex")]
    EmptyTouching,

    #[error("vertex set is not a unit-edge regular simplex: {0}")]
    NotRegular(String),

    #[error("too many points for exhaustive hull enumeration: {got} > {max}")]
    TooManyPoints { got: usize, max: usize },

    #[error("all input points coincide")]
    CoincidentPoints,

    #[error("polytope is degenerate (affine rank below its dimension)")]
    DegeneratePolytope,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("arity mismatch: expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("inconsistent geometry: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
