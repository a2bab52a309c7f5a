//! Error type shared by every operation in the crate.

/// Errors raised by subspace constructions and computations.
///
/// Every variant corresponds to a violated precondition; the message names
/// the precondition so callers (and the CLI) can report it verbatim.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Two subspaces live in ambient spaces of different dimensions.
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    /// An operation restricted to equidimensional subspaces was given
    /// subspaces of different dimensions.
    #[error("subspace dimension mismatch: {left} vs {right} (use delta for mixed dimensions)")]
    DimensionMismatch { left: usize, right: usize },

    /// A dimension argument is out of its admissible range.
    #[error("dimension error: {0}")]
    DimensionError(String),

    /// The input matrix does not have full column rank.
    #[error(
        "rank deficient: singular value ratio {ratio:.3e} at or below threshold {threshold:.3e}"
    )]
    RankDeficient { ratio: f64, threshold: f64 },

    /// The cross-Gram matrix is numerically singular, so the closed-form
    /// geodesic does not exist (some principal angle is at or near pi/2).
    #[error("singular pencil: smallest cross-Gram singular value {sigma_min:.3e} below 1e-12")]
    SingularPencil { sigma_min: f64 },

    /// Not enough directions orthogonal to both subspaces in the ambient
    /// space.
    #[error(
        "insufficient ambient dimension: need {needed} directions orthogonal to both \
         subspaces, only {available} available"
    )]
    InsufficientAmbient { needed: usize, available: usize },

    /// A matrix fails the symmetry/idempotency/trace tests for an orthogonal
    /// projection.
    #[error("not a projection matrix: {0}")]
    NotAProjection(String),

    /// A volume exceeds the representable range of f64.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A matrix entry is NaN or infinite.
    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
