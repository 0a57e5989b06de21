use thiserror::Error;

/// Errors produced by the classification and unfolding pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("numeric failure: {context} (residual {residual:.3e})")]
    NumericFailure { context: String, residual: f64 },

    #[error("invalid structure map: {0}")]
    InvalidStructure(String),

    #[error("incompatible structure maps: {0}")]
    IncompatibleStructures(String),

    #[error("ill-conditioned spectrum: classes at distance {gap:.3e} not merged at tolerance {tol:.3e}")]
    IllConditionedSpectrum { gap: f64, tol: f64 },

    #[error("invalid block: {0}")]
    InvalidBlock(String),

    #[error("classification failure: {0}")]
    ClassificationFailure(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
