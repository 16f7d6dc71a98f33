//! Exact symbolic engine for centralizers in free associative algebras.
//!
//! The crate reduces free-algebra elements to generic matrices, searches for
//! bivariate annihilating polynomials, deforms polynomial rings with the
//! Moyal star product of a constant Poisson tensor, diagonalizes matrix
//! series order by order, and computes degree-bounded centralizers. All
//! arithmetic is exact, over the rationals or a prime field.

pub mod centralizer_lab;
pub mod diagonalization;
pub mod error;
pub mod free_algebra;
pub mod generic_matrices;
pub mod linalg;
pub mod matrix;
pub mod quantization;
pub mod report;
pub mod rings;
pub mod sample;
mod text;

pub use error::{Error, Result};
