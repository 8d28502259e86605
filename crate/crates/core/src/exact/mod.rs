//! Exact rational scalars, matrices and elimination kernels.

mod matrix;
mod rational;

pub use matrix::{dot, kernel_basis, primitive_direction, row_reduce, QMatrix, RowReduction};
pub use rational::{ParseRationalError, Rational};
