use core::fmt::Debug;

use super::{Expr, Rational, Real};

/// Commutative-ring operations shared by exact scalars, floats, and
/// symbolic coefficients, so that tensor code can be written once.
pub trait Ring: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Cheap zero test; for symbolic values this is syntactic.
    fn is_zero(&self) -> bool;
}

/// Rings with division, used by the small dense solves.
pub trait Field: Ring {
    /// Panics on an exactly zero divisor.
    fn div(&self, other: &Self) -> Self;
    /// Absolute value as a float, used for pivot choice and thresholds.
    fn magnitude(&self) -> f64;
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl Field for Rational {
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Ring for Real {
    fn zero() -> Self {
        Real::zero()
    }
    fn one() -> Self {
        Real::one()
    }
    fn from_rational(r: &Rational) -> Self {
        Real::from_rational(r)
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn is_zero(&self) -> bool {
        Real::is_zero(self)
    }
}

impl Field for Real {
    fn div(&self, other: &Self) -> Self {
        self.clone() / other.clone()
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Ring for Expr {
    fn zero() -> Self {
        Expr::zero()
    }
    fn one() -> Self {
        Expr::one()
    }
    fn from_rational(r: &Rational) -> Self {
        Expr::Const(r.clone())
    }
    fn add(&self, other: &Self) -> Self {
        Expr::sum([self.clone(), other.clone()])
    }
    fn sub(&self, other: &Self) -> Self {
        Expr::sum([self.clone(), Expr::neg(other.clone())])
    }
    fn mul(&self, other: &Self) -> Self {
        Expr::product([self.clone(), other.clone()])
    }
    fn neg(&self) -> Self {
        Expr::neg(self.clone())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_const()
    }
}
