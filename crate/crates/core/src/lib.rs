pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod exactmath;
pub mod ham;
pub mod ifoham;
pub mod problem;

pub use error::{Error, Result};
pub use exactmath::{Degree, Polynomial, Rational};
pub use ham::{ham_rhs_term, ham_solve, Method, SolutionSeries};
pub use ifoham::{ifoham_solve, ifoham_step, picard_solve, picard_step, weighted_step};
pub use problem::{parse_problem, BivariatePolynomial, Ivp};
