use thiserror::Error;

/// Errors raised by the vacuum dielectric model.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("registry parse error at line {line}, column {column}: {message}")]
    RegistryParse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid species `{species}`: {reason}")]
    InvalidSpecies { species: String, reason: String },

    #[error("invalid registry: {0}")]
    InvalidRegistry(String),

    #[error("unknown preset `{0}` (expected sm_paper, sm_fermions or susy_doubled)")]
    UnknownPreset(String),

    #[error(
        "quadrature did not converge: error estimate {achieved:e} exceeds tolerance {requested:e}"
    )]
    NonConvergence { achieved: f64, requested: f64 },

    /// `1 - ΔΠ` vanished: the effective coupling diverges.
    #[error("Landau pole reached: |1 - ΔΠ| = {distance:e}")]
    LandauPole { distance: f64 },

    #[error("geometric series diverges: |ΔΠ| = {magnitude} >= 1")]
    SeriesDivergence { magnitude: f64 },

    #[error("field amplitude is not transverse: k·E0 = {dot:e}")]
    NonTransverse { dot: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
