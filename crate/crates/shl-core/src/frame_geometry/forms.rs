use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar_expr::{EvalError, Expr, Rational, Real, Ring, Value};
use crate::tensor_algebra::{SymKind, Tensor, Valence};

/// A differential form on a single chart of dimension `dim`, stored on
/// increasing index sets: the coefficient of `dx_{i₁} ∧ … ∧ dx_{i_k}`
/// (0-based indices).
///
/// Wedge products use the determinant convention,
/// `(a ∧ b)(x, y) = a(x)b(y) − a(y)b(x)`, so a coefficient is the value of
/// the form on the corresponding coordinate vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Expr>,
}

/// Sign of the permutation sorting `ix`, or `None` if an index repeats.
fn sort_sign(ix: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..ix.len() {
        let mut j = i;
        while j > 0 && ix[j - 1] > ix[j] {
            ix.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if ix.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl DiffForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        DiffForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `Σ_j c_j dx_j`.
    pub fn one_form(coeffs: &[Expr]) -> Self {
        let mut f = DiffForm::zero(coeffs.len(), 1);
        for (j, c) in coeffs.iter().enumerate() {
            f.add_term(vec![j], c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Nonzero terms (syntactically), keyed by increasing index sets.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Expr)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Add `c · dx_{ix}` for an arbitrary (not necessarily sorted) index list.
    pub fn add_term(&mut self, mut ix: Vec<usize>, c: Expr) {
        assert_eq!(ix.len(), self.degree);
        assert!(ix.iter().all(|&i| i < self.dim));
        if c.is_zero_const() {
            return;
        }
        let Some(sign) = sort_sign(&mut ix) else { return };
        let c = if sign < 0 { -c } else { c };
        let entry = self.terms.entry(ix);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero_const() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// The coefficient on an arbitrary index list, with the alternating sign.
    pub fn component(&self, ix: &[usize]) -> Expr {
        let mut sorted = ix.to_vec();
        match sort_sign(&mut sorted) {
            None => Expr::zero(),
            Some(sign) => match self.terms.get(&sorted) {
                None => Expr::zero(),
                Some(c) if sign > 0 => c.clone(),
                Some(c) => -c.clone(),
            },
        }
    }

    pub fn add(&self, other: &DiffForm) -> DiffForm {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, k: &Expr) -> DiffForm {
        let mut out = DiffForm::zero(self.dim, self.degree);
        for (ix, v) in &self.terms {
            out.add_term(ix.clone(), k.clone() * v.clone());
        }
        out
    }

    pub fn wedge(&self, other: &DiffForm) -> DiffForm {
        assert_eq!(self.dim, other.dim);
        let mut out = DiffForm::zero(self.dim, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut ix = a.clone();
                ix.extend_from_slice(b);
                out.add_term(ix, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Exterior derivative: `d(f dx_I) = Σ_j ∂_j f dx_j ∧ dx_I`.
    pub fn d(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.dim, self.degree + 1);
        for (ix, c) in &self.terms {
            for j in 0..self.dim {
                if ix.contains(&j) {
                    continue;
                }
                let dc = c.diff(j + 1);
                if dc.is_zero_const() {
                    continue;
                }
                let mut full = vec![j];
                full.extend_from_slice(ix);
                out.add_term(full, dc);
            }
        }
        out
    }

    /// Whether every coefficient normalizes to the zero function.
    pub fn is_identically_zero(&self) -> bool {
        self.terms.values().all(Expr::is_identically_zero)
    }

    /// Coefficients rebuilt from normal forms, dropping vanishing terms.
    pub fn simplify(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.dim, self.degree);
        for (ix, c) in &self.terms {
            let s = c.simplify();
            if !s.is_zero_const() {
                out.terms.insert(ix.clone(), s);
            }
        }
        out
    }

    /// The form at a point as a fully antisymmetric covariant tensor in the
    /// coordinate basis.
    pub fn at(&self, p: &[Rational]) -> Result<Sampled, EvalError> {
        let mut values = Vec::with_capacity(self.terms.len());
        for (ix, c) in &self.terms {
            values.push((ix.clone(), c.eval(p)?));
        }
        let exact = values.iter().all(|(_, v)| v.is_exact());
        Ok(if exact {
            Sampled::Exact(self.expand(values.into_iter().map(|(ix, v)| (ix, v.exact().unwrap().clone()))))
        } else {
            Sampled::Approx(self.expand(values.into_iter().map(|(ix, v)| (ix, v.to_real()))))
        })
    }

    fn expand<S: Ring>(&self, values: impl Iterator<Item = (Vec<usize>, S)>) -> Tensor<S> {
        let mut t = Tensor::zeros(self.dim, vec![Valence::Covariant; self.degree]);
        let perms = permutations(self.degree);
        for (ix, v) in values {
            for (perm, sign) in &perms {
                let permuted: Vec<usize> = perm.iter().map(|&i| ix[i]).collect();
                t.set(&permuted, if *sign > 0 { v.clone() } else { v.neg() });
            }
        }
        if self.degree >= 2 {
            let slots: Vec<usize> = (0..self.degree).collect();
            t.mark(&slots, SymKind::Alternating);
        }
        t
    }
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    heap(k, &mut cur, &mut out);
    out.into_iter()
        .map(|p| {
            let mut q = p.clone();
            let s = sort_sign(&mut q).unwrap();
            (p, s)
        })
        .collect()
}

fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap(k - 1, a, out);
}

/// A tensor evaluated at a point: exact when every coefficient was.
#[derive(Clone, Debug, PartialEq)]
pub enum Sampled {
    Exact(Tensor),
    Approx(Tensor<Real>),
}

impl Sampled {
    pub fn is_exact(&self) -> bool {
        matches!(self, Sampled::Exact(_))
    }

    pub fn to_real(&self) -> Tensor<Real> {
        match self {
            Sampled::Exact(t) => t.map(Real::from_rational),
            Sampled::Approx(t) => t.clone(),
        }
    }
}

/// Evaluate a list of expressions; exact when all values are.
pub(crate) fn eval_all(es: &[Expr], p: &[Rational]) -> Result<Result<Vec<Rational>, Vec<Real>>, EvalError> {
    let vals: Vec<Value> = es.iter().map(|e| e.eval(p)).collect::<Result<_, _>>()?;
    if vals.iter().all(Value::is_exact) {
        Ok(Ok(vals.into_iter().map(|v| v.exact().unwrap().clone()).collect()))
    } else {
        Ok(Err(vals.iter().map(Value::to_real).collect()))
    }
}
