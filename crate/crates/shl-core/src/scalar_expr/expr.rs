use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops;

use super::{Rational, Real};

/// A coefficient function of a chart: rationals, variables `x1, x2, …`,
/// sums, products, quotients, negation and `exp`.
///
/// The smart constructors perform only light folding (flattening and
/// constant collection). Semantic equality goes through
/// [`Expr::equivalent`], which compares normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Const(Rational),
    /// 1-based coordinate index.
    Var(usize),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Exp(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("division by zero in `{0}`")]
    DivisionByZero(String),
    #[error("variable x{0} has no value at the evaluation point")]
    Unassigned(usize),
}

/// Result of evaluating an expression at a rational point.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    /// High-precision approximation; produced only when some `exp` has a
    /// nonzero argument.
    Approx(Real),
}

impl Value {
    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }

    pub fn to_real(&self) -> Real {
        match self {
            Value::Exact(r) => Real::from_rational(r),
            Value::Approx(x) => x.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64(),
            Value::Approx(x) => x.to_f64(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Approx(x) => x.is_zero(),
        }
    }

    fn combine(
        a: Value,
        b: Value,
        exact: impl FnOnce(Rational, Rational) -> Rational,
        approx: impl FnOnce(Real, Real) -> Real,
    ) -> Value {
        match (a, b) {
            (Value::Exact(x), Value::Exact(y)) => Value::Exact(exact(x, y)),
            (a, b) => Value::Approx(approx(a.to_real(), b.to_real())),
        }
    }
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Const(Rational::zero())
    }

    pub fn one() -> Expr {
        Expr::Const(Rational::one())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(Rational::from_int(n))
    }

    pub fn constant(r: Rational) -> Expr {
        Expr::Const(r)
    }

    /// The coordinate `x_i`; `i` is 1-based.
    pub fn var(i: usize) -> Expr {
        assert!(i >= 1, "variable indices start at 1");
        Expr::Var(i)
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self {
            Expr::Const(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_zero_const(&self) -> bool {
        matches!(self, Expr::Const(r) if r.is_zero())
    }

    pub fn sum(items: impl IntoIterator<Item = Expr>) -> Expr {
        let mut c = Rational::zero();
        let mut out = Vec::new();
        for e in items {
            match e {
                Expr::Const(r) => c += r,
                Expr::Sum(inner) => {
                    for x in inner {
                        match x {
                            Expr::Const(r) => c += r,
                            x => out.push(x),
                        }
                    }
                }
                e => out.push(e),
            }
        }
        if !c.is_zero() {
            out.push(Expr::Const(c));
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => Expr::Sum(out),
        }
    }

    pub fn product(items: impl IntoIterator<Item = Expr>) -> Expr {
        let mut c = Rational::one();
        let mut out = Vec::new();
        fn absorb(e: Expr, c: &mut Rational, out: &mut Vec<Expr>) {
            match e {
                Expr::Const(r) => *c *= r,
                Expr::Neg(x) => {
                    *c = -&*c;
                    absorb(*x, c, out);
                }
                Expr::Product(inner) => {
                    for x in inner {
                        absorb(x, c, out);
                    }
                }
                e => out.push(e),
            }
        }
        for e in items {
            absorb(e, &mut c, &mut out);
        }
        if c.is_zero() {
            return Expr::zero();
        }
        let body = match out.len() {
            0 => return Expr::Const(c),
            1 => out.pop().unwrap(),
            _ => Expr::Product(out),
        };
        if c.is_one() {
            body
        } else if c == -Rational::one() {
            Expr::Neg(Box::new(body))
        } else {
            match body {
                Expr::Product(mut v) => {
                    v.insert(0, Expr::Const(c));
                    Expr::Product(v)
                }
                b => Expr::Product(vec![Expr::Const(c), b]),
            }
        }
    }

    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Const(r) => Expr::Const(-r),
            Expr::Neg(x) => *x,
            Expr::Product(v) if matches!(v.first(), Some(Expr::Const(_))) => Expr::product(
                core::iter::once(Expr::int(-1)).chain(v),
            ),
            a => Expr::Neg(Box::new(a)),
        }
    }

    /// `a / b`. Panics when `b` is the literal constant zero; denominators
    /// that only vanish at some points are checked during evaluation.
    pub fn quotient(a: Expr, b: Expr) -> Expr {
        Self::try_quotient(a, b).expect("quotient by the zero constant")
    }

    pub fn try_quotient(a: Expr, b: Expr) -> Option<Expr> {
        match b {
            Expr::Const(c) => {
                let inv = c.recip()?;
                Some(Expr::product([Expr::Const(inv), a]))
            }
            b => {
                if a.is_zero_const() {
                    Some(Expr::zero())
                } else {
                    Some(Expr::Quotient(Box::new(a), Box::new(b)))
                }
            }
        }
    }

    pub fn exp(a: Expr) -> Expr {
        if a.is_zero_const() {
            Expr::one()
        } else {
            Expr::Exp(Box::new(a))
        }
    }

    /// Partial derivative with respect to `x_v`.
    pub fn diff(&self, v: usize) -> Expr {
        match self {
            Expr::Const(_) => Expr::zero(),
            Expr::Var(i) => {
                if *i == v {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Expr::Sum(items) => Expr::sum(items.iter().map(|e| e.diff(v))),
            Expr::Product(items) => {
                let mut terms = Vec::new();
                for (i, f) in items.iter().enumerate() {
                    let df = f.diff(v);
                    if df.is_zero_const() {
                        continue;
                    }
                    let mut factors = items.clone();
                    factors[i] = df;
                    terms.push(Expr::product(factors));
                }
                Expr::sum(terms)
            }
            Expr::Quotient(a, b) => {
                let da = a.diff(v);
                let db = b.diff(v);
                if db.is_zero_const() {
                    return Expr::quotient(da, (**b).clone());
                }
                let num = Expr::sum([
                    Expr::product([da, (**b).clone()]),
                    Expr::neg(Expr::product([(**a).clone(), db])),
                ]);
                Expr::quotient(num, Expr::product([(**b).clone(), (**b).clone()]))
            }
            Expr::Neg(a) => Expr::neg(a.diff(v)),
            Expr::Exp(a) => Expr::product([self.clone(), a.diff(v)]),
        }
    }

    /// Evaluate with `point[i - 1]` as the value of `x_i`.
    pub fn eval(&self, point: &[Rational]) -> Result<Value, EvalError> {
        match self {
            Expr::Const(r) => Ok(Value::Exact(r.clone())),
            Expr::Var(i) => point
                .get(*i - 1)
                .cloned()
                .map(Value::Exact)
                .ok_or(EvalError::Unassigned(*i)),
            Expr::Sum(items) => {
                let mut acc = Value::Exact(Rational::zero());
                for e in items {
                    acc = Value::combine(acc, e.eval(point)?, |a, b| a + b, |a, b| a + b);
                }
                Ok(acc)
            }
            Expr::Product(items) => {
                let mut acc = Value::Exact(Rational::one());
                for e in items {
                    acc = Value::combine(acc, e.eval(point)?, |a, b| a * b, |a, b| a * b);
                }
                Ok(acc)
            }
            Expr::Quotient(a, b) => {
                let den = b.eval(point)?;
                if den.is_zero() {
                    return Err(EvalError::DivisionByZero(self.to_string()));
                }
                let num = a.eval(point)?;
                Ok(Value::combine(num, den, |a, b| a / b, |a, b| a / b))
            }
            Expr::Neg(a) => Ok(match a.eval(point)? {
                Value::Exact(r) => Value::Exact(-r),
                Value::Approx(x) => Value::Approx(-x),
            }),
            Expr::Exp(a) => Ok(match a.eval(point)? {
                Value::Exact(r) if r.is_zero() => Value::Exact(Rational::one()),
                v => Value::Approx(v.to_real().exp()),
            }),
        }
    }

    /// Substitute `x_i ↦ subs[i - 1]` for every variable.
    pub fn substitute(&self, subs: &[Expr]) -> Expr {
        match self {
            Expr::Const(_) => self.clone(),
            Expr::Var(i) => subs.get(*i - 1).cloned().unwrap_or_else(|| self.clone()),
            Expr::Sum(items) => Expr::sum(items.iter().map(|e| e.substitute(subs))),
            Expr::Product(items) => Expr::product(items.iter().map(|e| e.substitute(subs))),
            Expr::Quotient(a, b) => Expr::quotient(a.substitute(subs), b.substitute(subs)),
            Expr::Neg(a) => Expr::neg(a.substitute(subs)),
            Expr::Exp(a) => Expr::exp(a.substitute(subs)),
        }
    }

    /// Indices of all variables that occur.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(i) => {
                out.insert(*i);
            }
            Expr::Sum(v) | Expr::Product(v) => v.iter().for_each(|e| e.collect_vars(out)),
            Expr::Quotient(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Exp(a) => a.collect_vars(out),
        }
    }

    pub fn max_var(&self) -> usize {
        self.variables().last().copied().unwrap_or(0)
    }

    /// Whether the expression contains an `exp` node at all.
    pub fn has_exp(&self) -> bool {
        match self {
            Expr::Exp(_) => true,
            Expr::Const(_) | Expr::Var(_) => false,
            Expr::Sum(v) | Expr::Product(v) => v.iter().any(Expr::has_exp),
            Expr::Quotient(a, b) => a.has_exp() || b.has_exp(),
            Expr::Neg(a) => a.has_exp(),
        }
    }
}

impl fmt::Display for Expr {
    /// Prefix s-expression form, e.g. `(* (exp (+ x1 (- x5))) x2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, op: &str, items: &[&Expr]| -> fmt::Result {
            write!(f, "({op}")?;
            for e in items {
                write!(f, " {e}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Const(r) => write!(f, "{r}"),
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Sum(v) => list(f, "+", &v.iter().collect::<Vec<_>>()),
            Expr::Product(v) => list(f, "*", &v.iter().collect::<Vec<_>>()),
            Expr::Quotient(a, b) => list(f, "/", &[a, b]),
            Expr::Neg(a) => list(f, "-", &[a]),
            Expr::Exp(a) => list(f, "exp", &[a]),
        }
    }
}

impl From<Rational> for Expr {
    fn from(r: Rational) -> Self {
        Expr::Const(r)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum([self, rhs])
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::sum([self, Expr::neg(rhs)])
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product([self, rhs])
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::quotient(self, rhs)
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}
