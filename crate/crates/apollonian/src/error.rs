//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by exact-geometry and number-theoretic operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid surd: {0}")]
    InvalidSurd(String),

    #[error("mixed radicands: surd arithmetic requires a common square-free d")]
    MixedRadicands,

    #[error("negative discriminant: roots are complex and not representable as a real surd")]
    ComplexRoots,

    #[error("degenerate triple: the three points must be pairwise distinct")]
    DegenerateTriple,

    #[error("cross-ratio needs at least three distinct points")]
    DegenerateCrossRatio,

    #[error("classification is only defined for conformal (non-conjugating) maps")]
    UnsupportedClassification,

    #[error("coincident circles")]
    CoincidentCircles,

    #[error("circles are not tangent")]
    NotTangent,

    #[error("collinear points")]
    CollinearPoints,

    #[error("tangent lines meet at infinity: half-plane degenerate configuration")]
    HalfPlaneDegenerate,

    #[error("invalid Descartes quadruple: {0}")]
    InvalidQuad(String),

    #[error("invalid friendly triplet: {0}")]
    InvalidTriplet(String),

    #[error("inconsistent curvature-weighted centers: {0}")]
    InconsistentCenters(String),

    #[error("map is not hyperbolic: |trace| must exceed 2")]
    NonHyperbolic,

    #[error("no rational realization: {0}")]
    NonRealizable(String),

    #[error("degenerate tangency points: {0}")]
    DegenerateTangency(String),

    #[error("no integer descent: {0}")]
    NoIntegerDescent(String),

    #[error("symmetric-partner formulas disagree: {0}")]
    SymmetricInconsistency(String),

    #[error("curvature is not a perfect square: {0}")]
    NonSquareCurvature(String),

    #[error("map has no fixed circle")]
    NoFixedCircle,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
