//! Exact scalars over ℚ or 𝔽_p and dense exact matrices.

mod form;
mod matrix;
mod scalar;

pub use form::{add_scaled_vec, scale_vec, Coef, Form};
pub use matrix::{Matrix, Rref};
pub use scalar::{axpy, dot, is_zero_vec, Field, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected `q` or `fp:<p>`)")]
    BadField(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
