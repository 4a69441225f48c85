#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod adapted_connections;
pub mod eh_model;
pub mod frame_geometry;
pub mod homogeneous;
pub mod linalg;
pub mod rep_theory;
pub mod scalar_expr;
pub mod tensor_algebra;

pub use scalar_expr::{Expr, Rational};
