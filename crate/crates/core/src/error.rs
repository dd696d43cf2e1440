use thiserror::Error;

/// Errors raised by the algebra, module and operator layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is not Hermitian (relative asymmetry {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("algebra mismatch: {left:?} vs {right:?}")]
    AlgebraMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("not supported: {0}")]
    NotSupported(String),
    #[error("candidate is not an inner inverse (residual {residual:.3e})")]
    NotInnerInverse { residual: f64 },
    #[error("operator is zero; the reduced minimum modulus is undefined")]
    ZeroOperator,
    #[error("operator is not an orthogonal projection (residual {residual:.3e})")]
    NotAProjection { residual: f64 },
    #[error("product PQ vanishes")]
    ZeroProduct,
    #[error("invalid rank profile: {0}")]
    InvalidRank(String),
}

pub type Result<T> = std::result::Result<T, Error>;
