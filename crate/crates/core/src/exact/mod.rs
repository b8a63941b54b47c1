//! Exact fields and dense linear algebra.

pub mod cyclotomic;
pub mod field;
pub mod matrix;

pub use field::{Field, Scalar};
pub use matrix::{solve_linear, Matrix, Nullspace, Solution};
