//! Exact scalars, monomials and multivariate polynomials.
//!
//! Polynomials carry their ring descriptor (variable names, coefficient
//! field, optional bigrading split, monomial order) and keep their terms in
//! canonical form: sorted descending under the ring order, no zero
//! coefficients. Two equal polynomials are structurally identical.

mod monomial;
mod parse;
mod poly;
mod ring;
mod scalar;

pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::parse_poly;
pub use poly::Polynomial;
pub use ring::PolyRing;
pub use scalar::{Field, Fp, Scalar, DEFAULT_PRIME};

pub(crate) use scalar::inv_mod;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent overflow: monomial exponents are limited to 16 bits")]
    ExponentOverflow,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("point has {got} coordinates but the ring has {expected} variables")]
    PointLength { expected: usize, got: usize },
    #[error("variable index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not an odd prime below 2^31")]
    BadModulus(u32),
    #[error("order permutation is not a permutation of the variables")]
    BadPermutation,
    #[error("variable `{0}` has no image in the target ring")]
    Unmapped(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("division by a non-constant expression")]
    NonConstantDivisor,
}
