use thiserror::Error;

/// Errors raised by constructors and depth computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DepthError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point has no coordinates")]
    EmptyPoint,
    #[error("coordinate is not finite: {0}")]
    NonFinite(f64),
    #[error("beta must be a finite value >= 1, got {0}")]
    InvalidBeta(f64),
    #[error("need at least {needed} data points, got {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("this operation is only defined in the plane (d = 2), got d = {0}")]
    NotPlanar(usize),
    #[error("zero vector is not allowed here")]
    ZeroVector,
    #[error("position {position} out of range for {len} entries")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("halfplane normal must be nonzero")]
    ZeroNormal,
    #[error("disk radius squared must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("gadget values must be strictly positive, got {0}")]
    NonPositiveValue(f64),
    #[error("gadget angle must lie strictly between 0 and pi, got {0}")]
    InvalidAngle(f64),
}

pub type Result<T, E = DepthError> = core::result::Result<T, E>;
