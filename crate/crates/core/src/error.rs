//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("cannot factor zero")]
    FactorZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero quaternion does not parametrize a rotation")]
    ZeroQuaternion,
    #[error("quaternion is not a primitive Lipschitz quaternion")]
    NotPrimitive,
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("lattices are incommensurate")]
    Incommensurate,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported dimension {0} (expected 2..=4)")]
    UnsupportedDimension(usize),
    #[error("isometry is not an affine coincidence of the lattice")]
    NotACoincidence,
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("degenerate enumeration window")]
    DegenerateWindow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
