//! Fixed-precision binary floats used when an expression leaves ℚ.
//!
//! The only source of irrationality in the coefficient language is `exp`, so
//! this type only needs field operations, `exp` and conversions. Values carry
//! [`PRECISION`] bits of mantissa.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;

use super::Rational;

/// Mantissa bits used for every inexact value.
pub const PRECISION: usize = 128;

type Inner = FBig<HalfEven, 2>;

#[derive(Clone, Debug, PartialEq)]
pub struct Real(Inner);

fn to_ibig(b: &BigInt) -> IBig {
    IBig::from_le_bytes(&b.to_signed_bytes_le())
}

impl Real {
    fn wrap(x: Inner) -> Self {
        Real(x.with_precision(PRECISION).value())
    }

    pub fn zero() -> Self {
        Real::from_i64(0)
    }

    pub fn one() -> Self {
        Real::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        Real::wrap(Inner::from(n))
    }

    pub fn from_rational(r: &Rational) -> Self {
        let n = Real::wrap(Inner::from(to_ibig(&r.numer())));
        let d = Real::wrap(Inner::from(to_ibig(&r.denom())));
        n / d
    }

    pub fn exp(&self) -> Self {
        Real::wrap(self.0.exp())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Inner::ZERO
    }

    pub fn abs(&self) -> Self {
        if self.0 < Inner::ZERO {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e}", self.to_f64())
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        Real::wrap(self.0 + rhs.0)
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        Real::wrap(self.0 - rhs.0)
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, rhs: Real) -> Real {
        Real::wrap(self.0 * rhs.0)
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        assert!(!rhs.is_zero(), "division by zero real");
        Real::wrap(self.0 / rhs.0)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_one_digits() {
        // e to 30 digits, from the continued fraction of e
        let e = Real::one().exp();
        let reference = Real::from_rational(&"2718281828459045235360287471352662497757/1000000000000000000000000000000000000000".parse().unwrap());
        let rel = ((e - reference.clone()) / reference).abs();
        assert!(rel.to_f64() < 1e-30);
    }

    #[test]
    fn rational_roundtrip() {
        let r = Rational::new(-7, 3);
        let x = Real::from_rational(&r);
        assert!((x.to_f64() + 7.0 / 3.0).abs() < 1e-15);
    }
}
