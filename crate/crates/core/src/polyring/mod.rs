//! Exact coefficient layer: rationals, sparse multivariate polynomials,
//! the one-variable exponential extension, unreduced quotients and the
//! expression parser.

mod chart;
mod exppoly;
pub mod matrix;
pub mod parse;
mod polynomial;
mod ratexpr;

pub use chart::{Chart, ChartRef, MAX_DIM};
pub(crate) use chart::{ensure_same, same_chart};
pub use exppoly::ExpPoly;
pub use parse::{parse_expr, parse_ratexpr};
pub use polynomial::{int, rat, Monomial, Polynomial, Rational};
pub use ratexpr::RationalExpr;
