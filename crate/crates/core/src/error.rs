use thiserror::Error;

use crate::polygon::Diagonal;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("generators are not linearly independent (not simplicial)")]
    NotSimplicial,

    #[error("invalid diagonal {a}-{b} of a {m}-gon")]
    InvalidDiagonal { a: usize, b: usize, m: usize },

    #[error("polygon must have at least {min} vertices, got {m}")]
    PolygonTooSmall { m: usize, min: usize },

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("diagonal {0} is not in the triangulation")]
    DiagonalNotInTriangulation(Diagonal),

    #[error("not a simple realization at {0}")]
    NotSimpleAt(String),

    #[error("degenerate vertex at {triangulation}: facet {facet} is not strictly satisfied")]
    DegenerateVertex {
        triangulation: String,
        facet: Diagonal,
    },

    #[error("invalid RSS parameters: {0}")]
    InvalidRssParams(String),

    #[error("flip classification failed for quadrilateral {quad:?}: {detail}")]
    FlipClassification { quad: [usize; 4], detail: String },

    #[error("weight certification failed after {halvings} halvings")]
    WeightCertification { halvings: u32 },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}
