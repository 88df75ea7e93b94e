//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("linear solve failed: {0}")]
    Solver(String),

    #[error("buckling table build failed: {0}")]
    TableBuild(String),

    #[error("no critical thickness ratio exists for mode n = {mode}")]
    NoCriticalRatio { mode: f64 },

    #[error(
        "shell ratio {ratio:.6e} lies below the table minimum {table_min:.6e}; \
         rebuild the table with a larger maximum mode number"
    )]
    TableExtension { ratio: f64, table_min: f64 },

    #[error("unphysical deformation: {0}")]
    UnphysicalDeformation(String),

    #[error(
        "applied pressure {pressure:.6e} Pa is below the residual shell pressure \
         {residual:.6e} Pa; the cavity would expand, outside the loading model"
    )]
    WouldExpand { pressure: f64, residual: f64 },

    #[error("root bracketing failed: {0}")]
    Bracket(String),

    #[error("quadrature did not converge: {0}")]
    Integration(String),

    #[error("operation does not support this matrix model: {0}")]
    UnsupportedModel(String),

    #[error("stress integration oracle failed: {0}")]
    Oracle(String),
}
