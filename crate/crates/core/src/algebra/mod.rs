//! Exact scalar and polynomial arithmetic over `Q` and quadratic
//! extensions `Q(sqrt(D))`.
//!
//! Everything in this module is exact: arbitrary-precision rationals,
//! no floating point, no implicit rounding.  Mixing two different
//! quadratic extensions is rejected at the polynomial level; scalars
//! from incompatible extensions panic when combined directly (the
//! polynomial entry points validate ring tags before descending into
//! coefficient arithmetic).

mod bipoly;
mod json;
mod scalar;
mod unipoly;

pub use bipoly::{BiPoly, Var};
pub(crate) use bipoly::resultant_allow_constant;
pub use scalar::ExactScalar;
pub use unipoly::UniPoly;

pub(crate) use json::{scalar_from_parts, scalar_to_parts};

use thiserror::Error;

/// Errors produced by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("cannot mix extensions Q(sqrt({0})) and Q(sqrt({1}))")]
    MixedExtensions(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomials have different variables: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("resultant requires positive degree in the eliminated variable {0}")]
    DegenerateResultant(String),
    #[error("invalid coefficient literal {0:?}")]
    BadLiteral(String),
    #[error("invalid polynomial encoding: {0}")]
    BadEncoding(String),
}

/// Join the extension tags of two operands.  `None` (plain `Q`) embeds
/// into any quadratic extension; two distinct extensions do not embed
/// into each other.
pub(crate) fn join_ext(a: Option<i64>, b: Option<i64>) -> Result<Option<i64>, AlgebraError> {
    match (a, b) {
        (None, e) | (e, None) => Ok(e),
        (Some(p), Some(q)) if p == q => Ok(Some(p)),
        (Some(p), Some(q)) => Err(AlgebraError::MixedExtensions(p, q)),
    }
}
