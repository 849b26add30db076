//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CoreError>;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("field contains non-finite values")]
    NonFiniteValues,

    #[error("degenerate rectangle: {0}")]
    DegenerateRectangle(String),

    #[error("region contains no cell centers: {0}")]
    EmptyRegion(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("conjugate exponent undefined: p(x) = 1 at {0}")]
    ConjugateUndefined(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("fields live on different domains")]
    DomainMismatch,

    #[error("discretization too coarse: no rectangle contains cube {cube}")]
    DiscretizationTooCoarse { cube: String },

    #[error("cubes overlap: {0}")]
    OverlappingCubes(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("bad file format: {0}")]
    Format(String),
}
