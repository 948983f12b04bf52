//! Exact arithmetic used by every other module: arbitrary-precision
//! rationals, truncated power series in the cohomology generator `x`,
//! polynomials in the lift parameter `l`, and rational functions in the
//! character variable `λ`.

mod character;
mod laurent;
mod lift;
mod series;

pub use character::{character_is_constant, character_limit_at_infinity, character_sum, CharacterFunction};
pub use laurent::LaurentPoly;
pub use lift::{lift_poly_equal, LiftPolynomial};
pub use series::{genus_line_factor, series_inverse, series_product, GenusKind, TruncatedSeries};

use num_bigint::BigInt;
use thiserror::Error;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series has zero constant term and is not invertible")]
    NonUnit,
}

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
