//! Exact rationals and the small coefficient-function language used by
//! frames.

mod expr;
mod field;
mod normal;
mod rational;
mod real;
pub mod sexpr;

pub use expr::{EvalError, Expr, Value};
pub use field::{Field, Ring};
pub use normal::{normalize, Monomial, Poly, ZeroDenominator};
pub use rational::{int, rat, ParseRationalError, Rational};
pub use real::{Real, PRECISION};
