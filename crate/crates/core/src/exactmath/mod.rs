//! Exact scalar and polynomial arithmetic.
//!
//! Nothing in here rounds. Floats only appear at the edges, in
//! [`rational::to_f64`] and [`Polynomial::eval_f64`].

pub mod poly;
pub mod rational;

pub use poly::{Degree, Polynomial, TermRecord};
pub use rational::{format_rational, parse_rational, ratio, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}
