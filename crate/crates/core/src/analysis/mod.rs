//! Checks built on top of the closure and the matrix models: x-integrals,
//! higher symmetries, two-component exponential systems and the
//! isomorphism comparison.

mod expsystem;
mod integrals;
mod iso;

pub use expsystem::*;
pub use integrals::*;
pub use iso::*;
