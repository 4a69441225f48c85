use alloc::vec;
use alloc::vec::Vec;

use crate::scalar_expr::Rational;

/// Sparse vector as sorted `(index, nonzero value)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Build from unsorted pairs, merging duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (i, x) in pairs {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y += x,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SparseVec { entries }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, Rational)> {
        self.entries.first()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * k)).collect(),
        }
    }

    /// `self + k·other`.
    pub fn axpy(&self, k: &Rational, other: &SparseVec) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|p| p.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|p| p.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, k * &other.entries[b].1));
                b += 1;
            } else {
                let s = &self.entries[a].1 + &(k * &other.entries[b].1);
                if !s.is_zero() {
                    out.push((ia, s));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn max_abs(&self) -> Rational {
        self.entries
            .iter()
            .map(|(_, x)| x.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Incrementally built, fully reduced row echelon basis of a subspace of
/// `ℚ^dim`. Every stored row has leading entry 1 and zeros in every other
/// row's pivot column, so reduction modulo the span is a single pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    /// `pivot_row[c]` is the row whose pivot is column `c`.
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c].is_some()
    }

    /// Columns without a pivot, in increasing order; residuals of
    /// [`Echelon::reduce`] are supported on these.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| self.pivot_row[*c].is_none()).collect()
    }

    /// The canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (c, x) in v.entries() {
            if let Some(r) = self.pivot_row[*c] {
                // later subtractions never touch other pivot columns, so the
                // original coefficient is still the current one
                out = out.axpy(&-x, &self.rows[r]);
            }
        }
        out
    }

    /// Add `v` to the span; returns `false` if it was already contained.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading().cloned() else {
            return false;
        };
        let r = r.scale(&lead.recip().unwrap());
        for row in self.rows.iter_mut() {
            let x = row.get(p);
            if !x.is_zero() {
                *row = row.axpy(&-x, &r);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }
}
