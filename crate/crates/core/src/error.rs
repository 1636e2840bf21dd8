//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeomError {
    #[error("input is not full-dimensional: {0}")]
    DegenerateInput(String),
    #[error("ambient dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("halfspace system is infeasible")]
    Empty,
    #[error("halfspace system is unbounded (recession direction exists)")]
    Unbounded,
    #[error("scale factor must be nonnegative, got {0}")]
    NegativeScale(f64),
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("support sample must be strictly positive: value {value} at direction index {index}")]
    NonPositive { index: usize, value: f64 },
    #[error("sample does not cover measure direction {0:?}")]
    MissingDirection(Vec<f64>),
    #[error("measure normals lie in a great subsphere (do not span the ambient space)")]
    GreatSubsphere,
    #[error("measure centroid is nonzero: |defect| = {0}")]
    CentroidNonzero(f64),
    #[error("solver failed to converge: {0}")]
    NoConvergence(String),
    #[error("polarization left a negative atom of weight {0}")]
    NumericalResidue(f64),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("candidate box has too many lattice points to enumerate ({0})")]
    TooLarge(u64),
    #[error("invalid input: {0}")]
    SchemaError(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
