//! Exact dense and sparse linear algebra over ℚ.

mod matrix;
mod roots;
mod sparse;

pub use matrix::Matrix;
pub use roots::{eval_poly, rational_roots, RootError};
pub use sparse::{Echelon, SparseVec};
