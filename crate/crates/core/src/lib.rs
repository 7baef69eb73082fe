//! Exact computation of characteristic Lie algebras of hyperbolic equations
//! `u_xy = f(u)` on truncated jet spaces, together with the matrix loop
//! algebras they are compared against.

pub mod analysis;
pub mod bell;
pub mod closure;
pub mod equation;
pub mod exactring;
pub mod jetfield;
pub mod linalg;
pub mod loopalg;

pub use exactring::{JetMonomial, JetPolynomial, Quasipolynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] exactring::ParseError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("truncation order {order} too small: {reason}")]
    OrderTooSmall { order: usize, reason: String },
    #[error("unsupported equation: {0}")]
    Unsupported(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
