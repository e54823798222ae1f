//! Exact arbitrary-precision arithmetic: rationals, quadratic extensions,
//! epsilon-jets, univariate polynomials, rational functions, truncated power
//! series and exact linear solving. Everything downstream is built on this.

pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod series;

use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by a series with zero constant term")]
    DivisionByZeroSeries,
    #[error("bad constant term {found} (expected {expected})")]
    BadConstantTerm { expected: String, found: String },
    #[error("series is not reversible: needs zero constant term and unit linear coefficient")]
    NotReversible,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type ExactResult<T> = Result<T, ExactError>;
