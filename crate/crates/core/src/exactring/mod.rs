//! Exact coefficient ring for jet-space computations.
//!
//! Three layers, each normalized on construction so that equality is plain
//! map equality:
//!
//! - [`JetMonomial`]: a product `u1^e1 * u2^e2 * ...` of jet variables with the
//!   weight grading `wt(u_k) = k`;
//! - [`JetPolynomial`]: a sparse map from monomials to exact rationals;
//! - [`Quasipolynomial`]: a finite sum `sum_a e^(a*u) * P_a` with integer `a`.
//!
//! Zero is the empty map at every level.

mod monomial;
mod poly;
mod quasi;
mod text;

pub use monomial::JetMonomial;
pub use poly::JetPolynomial;
pub use quasi::Quasipolynomial;
pub use text::{fmt_rational, parse_quasipolynomial, ParseError};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

macro_rules! forward_binops {
    ($ty:ty, $($tr:ident :: $method:ident),*) => {$(
        impl std::ops::$tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                std::ops::$tr::$method(&self, &rhs)
            }
        }
        impl std::ops::$tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                std::ops::$tr::$method(&self, rhs)
            }
        }
        impl std::ops::$tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                std::ops::$tr::$method(self, &rhs)
            }
        }
    )*};
}
pub(crate) use forward_binops;
