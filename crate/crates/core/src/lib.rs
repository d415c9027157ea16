//! Exact symbolic exterior calculus on a coordinate chart, and the
//! generalized Poisson, Nambu, Jacobi and Dirac brackets built from it.
//! All arithmetic is over the rationals; nothing is approximated.

pub mod brackets;
pub mod cli;
pub mod dirac;
pub mod error;
pub mod exterior;
pub mod models;
pub mod polyring;
pub mod random;
pub mod schouten;
pub mod suites;

pub use error::{Error, Result};
