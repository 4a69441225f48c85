//! Canonical sum-of-products form for [`Expr`].
//!
//! A normal form is a finite sum `Σ c·m` of monomials `m`, each a product of
//! integer powers of variables, at most one `exp` atom (with normalized
//! argument; `exp(a)·exp(b)` merges to `exp(a+b)`), and integer powers of
//! inverted non-monomial denominators. Two expressions with equal normal
//! forms are equal as functions; the converse holds for everything the
//! frame examples produce, which is all equality is used for.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Expr, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    vars: BTreeMap<usize, i32>,
    exp: Option<Poly>,
    inv: BTreeMap<Poly, i32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("denominator normalizes to zero")]
pub struct ZeroDenominator;

impl Monomial {
    fn is_one(&self) -> bool {
        self.vars.is_empty() && self.exp.is_none() && self.inv.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = self.vars.clone();
        for (v, k) in &other.vars {
            let e = vars.entry(*v).or_insert(0);
            *e += k;
            if *e == 0 {
                vars.remove(v);
            }
        }
        let exp = match (&self.exp, &other.exp) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => {
                let s = a.add(b);
                if s.is_zero() {
                    None
                } else {
                    Some(s)
                }
            }
        };
        let mut inv = self.inv.clone();
        for (p, k) in &other.inv {
            let e = inv.entry(p.clone()).or_insert(0);
            *e += k;
            if *e == 0 {
                inv.remove(p);
            }
        }
        Monomial { vars, exp, inv }
    }

    fn recip(&self) -> Monomial {
        Monomial {
            vars: self.vars.iter().map(|(v, k)| (*v, -k)).collect(),
            exp: self.exp.as_ref().map(|p| p.scale(&-Rational::one())),
            inv: self.inv.iter().map(|(p, k)| (p.clone(), -k)).collect(),
        }
    }

    fn to_expr(&self, c: &Rational) -> Expr {
        let mut num = alloc::vec![Expr::Const(c.clone())];
        let mut den = Vec::new();
        for (v, k) in &self.vars {
            let target = if *k > 0 { &mut num } else { &mut den };
            for _ in 0..k.unsigned_abs() {
                target.push(Expr::var(*v));
            }
        }
        if let Some(a) = &self.exp {
            num.push(Expr::exp(a.to_expr()));
        }
        for (p, k) in &self.inv {
            let target = if *k > 0 { &mut den } else { &mut num };
            for _ in 0..k.unsigned_abs() {
                target.push(p.to_expr());
            }
        }
        let n = Expr::product(num);
        if den.is_empty() {
            n
        } else {
            Expr::quotient(n, Expr::product(den))
        }
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::default(), c);
        }
        Poly { terms }
    }

    fn monomial(m: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.push(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.push(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    fn mul_monomial(&self, m: &Monomial, k: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            out.push(m1.mul(m), c1 * k);
        }
        out
    }

    pub fn to_expr(&self) -> Expr {
        Expr::sum(self.terms.iter().map(|(m, c)| m.to_expr(c)))
    }
}

/// Normal form of `e`; fails if some denominator is identically zero.
pub fn normalize(e: &Expr) -> Result<Poly, ZeroDenominator> {
    Ok(match e {
        Expr::Const(r) => Poly::constant(r.clone()),
        Expr::Var(i) => {
            let mut m = Monomial::default();
            m.vars.insert(*i, 1);
            Poly::monomial(m)
        }
        Expr::Sum(items) => {
            let mut acc = Poly::zero();
            for x in items {
                acc = acc.add(&normalize(x)?);
            }
            acc
        }
        Expr::Product(items) => {
            let mut acc = Poly::constant(Rational::one());
            for x in items {
                acc = acc.mul(&normalize(x)?);
                if acc.is_zero() {
                    break;
                }
            }
            acc
        }
        Expr::Neg(a) => normalize(a)?.scale(&-Rational::one()),
        Expr::Exp(a) => {
            let arg = normalize(a)?;
            if arg.is_zero() {
                Poly::constant(Rational::one())
            } else {
                Poly::monomial(Monomial {
                    exp: Some(arg),
                    ..Monomial::default()
                })
            }
        }
        Expr::Quotient(a, b) => {
            let den = normalize(b)?;
            let num = normalize(a)?;
            if den.is_zero() {
                return Err(ZeroDenominator);
            }
            if den.terms.len() == 1 {
                let (m, c) = den.terms.iter().next().unwrap();
                num.mul_monomial(&m.recip(), &c.recip().unwrap())
            } else {
                // fix the scale of the inverted atom by its leading coefficient
                let lead = den.terms.values().next().unwrap().clone();
                let unit = den.scale(&lead.recip().unwrap());
                let mut m = Monomial::default();
                m.inv.insert(unit, 1);
                num.mul_monomial(&m, &lead.recip().unwrap())
            }
        }
    })
}

impl Expr {
    /// Equality as functions, decided on normal forms.
    pub fn equivalent(&self, other: &Expr) -> bool {
        match (normalize(self), normalize(other)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Whether the expression normalizes to the zero function.
    pub fn is_identically_zero(&self) -> bool {
        normalize(self).map(|p| p.is_zero()).unwrap_or(false)
    }

    /// Rebuild the expression from its normal form.
    pub fn simplify(&self) -> Expr {
        match normalize(self) {
            Ok(p) => p.to_expr(),
            Err(_) => self.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::boxed::Box;

    fn x(i: usize) -> Expr {
        Expr::var(i)
    }

    #[test]
    fn exp_atoms_merge() {
        let a = Expr::exp(x(1)) * Expr::exp(-x(1));
        assert!(a.equivalent(&Expr::one()));
        let b = Expr::exp(x(1) + x(2));
        assert!(b.equivalent(&(Expr::exp(x(2)) * Expr::exp(x(1)))));
    }

    #[test]
    fn monomial_denominators_invert() {
        let e = (x(1) * x(2)) / x(1);
        assert!(e.equivalent(&x(2)));
        let e = Expr::int(3) / (Expr::int(2) * x(1));
        assert_eq!(e.simplify(), Expr::quotient(Expr::constant(Rational::new(3, 2)), x(1)));
    }

    #[test]
    fn general_denominators_are_scale_invariant() {
        let a = Expr::one() / (Expr::int(2) * x(1) + Expr::int(2) * x(2));
        let b = Expr::constant(Rational::new(1, 2)) / (x(2) + x(1));
        assert!(a.equivalent(&b));
    }

    #[test]
    fn zero_denominator_is_detected() {
        let e = Expr::Quotient(Box::new(Expr::one()), Box::new(x(1) - x(1)));
        assert!(normalize(&e).is_err());
    }
}
