//! Sparse multivariate polynomials over a [`FieldSpec`](crate::gf::FieldSpec)
//! and monomial orderings, including weighted graded orders.

mod monomial;
mod order;
mod parse;
mod polynomial;

pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::parse_polynomial;
pub use polynomial::{CoefStyle, Polynomial};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("zero polynomial used as a divisor")]
    ZeroDivisor,
    #[error("operands have different variable sets")]
    DimensionMismatch,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("syntax error: {0}")]
    SyntaxError(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}
