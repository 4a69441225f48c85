use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::scalar_expr::{Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valence {
    Covariant,
    Contravariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymKind {
    Symmetric,
    Alternating,
}

/// A declared (anti)symmetry over a set of slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub slots: Vec<usize>,
    pub kind: SymKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("expected {expected} slots, found {found}")]
    SlotCount { expected: usize, found: usize },
    #[error("slot {slot} has the wrong valence")]
    Valence { slot: usize },
    #[error("slots {0:?} do not share a valence")]
    MixedValence(Vec<usize>),
    #[error("slot {slot} out of range for a tensor with {slots} slots")]
    SlotRange { slot: usize, slots: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("declared {kind:?} symmetry on slots {slots:?} does not hold")]
    SymmetryViolated { slots: Vec<usize>, kind: SymKind },
}

/// Dense multi-index array over `S`, stored row-major: the last slot varies
/// fastest. Component `[i₀, …, i_{k−1}]` is the value on basis vectors
/// (covariant slots) and the coefficient of a basis vector (contravariant
/// slots).
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<S = Rational> {
    dim: usize,
    valences: Vec<Valence>,
    data: Vec<S>,
    symmetries: Vec<Symmetry>,
}

pub(crate) fn unravel(mut idx: usize, dim: usize, k: usize, out: &mut [usize]) {
    for s in (0..k).rev() {
        out[s] = idx % dim;
        idx /= dim;
    }
}

pub(crate) fn ravel(ix: &[usize], dim: usize) -> usize {
    ix.iter().fold(0, |acc, &i| acc * dim + i)
}

/// All permutations of `0..k` with their signs.
pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        let k = used.len();
        if prefix.len() == k {
            out.push((prefix.clone(), sign));
            return;
        }
        for i in 0..k {
            if used[i] {
                continue;
            }
            // inversions contributed by placing i now: unused elements below i
            let inv = (0..i).filter(|&j| !used[j]).count();
            used[i] = true;
            prefix.push(i);
            rec(prefix, used, if inv % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], 1, &mut out);
    out
}

impl<S: Ring> Tensor<S> {
    pub fn zeros(dim: usize, valences: Vec<Valence>) -> Self {
        let len = dim.pow(valences.len() as u32);
        Tensor {
            dim,
            valences,
            data: vec![S::zero(); len],
            symmetries: Vec::new(),
        }
    }

    pub fn covariant(dim: usize, slots: usize) -> Self {
        Self::zeros(dim, vec![Valence::Covariant; slots])
    }

    pub fn from_fn(dim: usize, valences: Vec<Valence>, mut f: impl FnMut(&[usize]) -> S) -> Self {
        let k = valences.len();
        let len = dim.pow(k as u32);
        let mut ix = vec![0; k];
        let mut data = Vec::with_capacity(len);
        for idx in 0..len {
            unravel(idx, dim, k, &mut ix);
            data.push(f(&ix));
        }
        Tensor {
            dim,
            valences,
            data,
            symmetries: Vec::new(),
        }
    }

    pub fn from_data(dim: usize, valences: Vec<Valence>, data: Vec<S>) -> Result<Self, TensorError> {
        let len = dim.pow(valences.len() as u32);
        if data.len() != len {
            return Err(TensorError::Dimension(data.len(), len));
        }
        Ok(Tensor {
            dim,
            valences,
            data,
            symmetries: Vec::new(),
        })
    }

    /// A covariant 2-tensor from its Gram matrix.
    pub fn from_bilinear(m: &Matrix<S>) -> Self {
        assert!(m.is_square());
        Self::from_fn(m.rows(), vec![Valence::Covariant; 2], |ix| m[(ix[0], ix[1])].clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> usize {
        self.valences.len()
    }

    pub fn valences(&self) -> &[Valence] {
        &self.valences
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn symmetries(&self) -> &[Symmetry] {
        &self.symmetries
    }

    pub fn is_fully_covariant(&self) -> bool {
        self.valences.iter().all(|v| *v == Valence::Covariant)
    }

    pub fn get(&self, ix: &[usize]) -> &S {
        debug_assert_eq!(ix.len(), self.slots());
        &self.data[ravel(ix, self.dim)]
    }

    pub fn set(&mut self, ix: &[usize], v: S) {
        let i = ravel(ix, self.dim);
        self.data[i] = v;
    }

    pub fn add_at(&mut self, ix: &[usize], v: &S) {
        let i = ravel(ix, self.dim);
        self.data[i] = self.data[i].add(v);
    }

    pub fn get_flat(&self, i: usize) -> &S {
        &self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::Dimension(self.dim, other.dim));
        }
        if self.valences != other.valences {
            return Err(TensorError::SlotCount {
                expected: self.slots(),
                found: other.slots(),
            });
        }
        Ok(())
    }

    fn common_symmetries(&self, other: &Self) -> Vec<Symmetry> {
        self.symmetries
            .iter()
            .filter(|s| other.symmetries.contains(s))
            .cloned()
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            dim: self.dim,
            valences: self.valences.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
            symmetries: self.common_symmetries(other),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            dim: self.dim,
            valences: self.valences.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
            symmetries: self.common_symmetries(other),
        })
    }

    pub fn scale(&self, k: &S) -> Self {
        Tensor {
            dim: self.dim,
            valences: self.valences.clone(),
            data: self.data.iter().map(|a| a.mul(k)).collect(),
            symmetries: self.symmetries.clone(),
        }
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Tensor<T> {
        Tensor {
            dim: self.dim,
            valences: self.valences.clone(),
            data: self.data.iter().map(f).collect(),
            symmetries: self.symmetries.clone(),
        }
    }

    /// Tensor product; the slots of `other` follow those of `self`.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut valences = self.valences.clone();
        valences.extend_from_slice(&other.valences);
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(if a.is_zero() || b.is_zero() { S::zero() } else { a.mul(b) });
            }
        }
        Tensor {
            dim: self.dim,
            valences,
            data,
            symmetries: Vec::new(),
        }
    }

    /// Reorder slots: slot `s` of the result is slot `perm[s]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let k = self.slots();
        assert_eq!(perm.len(), k);
        let valences = perm.iter().map(|&p| self.valences[p]).collect();
        let mut src = vec![0; k];
        Tensor::from_fn(self.dim, valences, |ix| {
            for s in 0..k {
                src[perm[s]] = ix[s];
            }
            self.get(&src).clone()
        })
    }

    /// Check a symmetry and record it as declared.
    pub fn declare(&mut self, slots: &[usize], kind: SymKind) -> Result<(), TensorError> {
        self.validate_slots(slots)?;
        if !self.holds(slots, kind) {
            return Err(TensorError::SymmetryViolated {
                slots: slots.to_vec(),
                kind,
            });
        }
        self.mark(slots, kind);
        Ok(())
    }

    pub(crate) fn mark(&mut self, slots: &[usize], kind: SymKind) {
        let s = Symmetry {
            slots: slots.to_vec(),
            kind,
        };
        if !self.symmetries.contains(&s) {
            self.symmetries.push(s);
        }
    }

    /// Whether all declared symmetries hold exactly.
    pub fn symmetries_hold(&self) -> bool {
        self.symmetries.iter().all(|s| self.holds(&s.slots, s.kind))
    }

    fn validate_slots(&self, slots: &[usize]) -> Result<(), TensorError> {
        for &s in slots {
            if s >= self.slots() {
                return Err(TensorError::SlotRange {
                    slot: s,
                    slots: self.slots(),
                });
            }
        }
        if let Some(&first) = slots.first() {
            if slots.iter().any(|&s| self.valences[s] != self.valences[first]) {
                return Err(TensorError::MixedValence(slots.to_vec()));
            }
        }
        Ok(())
    }

    /// Whether the tensor is (anti)symmetric under transpositions of the
    /// given slots (transpositions generate the whole group).
    pub fn holds(&self, slots: &[usize], kind: SymKind) -> bool {
        let k = self.slots();
        let mut ix = vec![0; k];
        for idx in 0..self.data.len() {
            unravel(idx, self.dim, k, &mut ix);
            for w in slots.windows(2) {
                let mut jx = ix.clone();
                jx.swap(w[0], w[1]);
                let other = self.get(&jx);
                let ok = match kind {
                    SymKind::Symmetric => *other == self.data[idx],
                    SymKind::Alternating => other.add(&self.data[idx]).is_zero(),
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Contract a covariant slot with a vector.
    pub fn insert_vector(&self, slot: usize, v: &[S]) -> Result<Self, TensorError> {
        if slot >= self.slots() {
            return Err(TensorError::SlotRange {
                slot,
                slots: self.slots(),
            });
        }
        if self.valences[slot] != Valence::Covariant {
            return Err(TensorError::Valence { slot });
        }
        let mut valences = self.valences.clone();
        valences.remove(slot);
        let mut src = vec![0; self.slots()];
        Ok(Tensor::from_fn(self.dim, valences, |ix| {
            let mut acc = S::zero();
            for (i, vi) in v.iter().enumerate() {
                if vi.is_zero() {
                    continue;
                }
                src[..slot].copy_from_slice(&ix[..slot]);
                src[slot] = i;
                src[slot + 1..].copy_from_slice(&ix[slot..]);
                acc = acc.add(&self.get(&src).mul(vi));
            }
            acc
        }))
    }
}

impl Tensor<Rational> {
    /// Projection onto (anti)symmetric tensors in the chosen slots, with the
    /// uniform `1/k!` weight.
    pub fn sym_alt(&self, slots: &[usize], kind: SymKind) -> Result<Self, TensorError> {
        self.validate_slots(slots)?;
        let perms = permutations(slots.len());
        let weight = Rational::new(1, perms.len() as i64);
        let k = self.slots();
        let mut src = vec![0; k];
        let mut out = Tensor::from_fn(self.dim, self.valences.clone(), |ix| {
            let mut acc = Rational::zero();
            for (p, sign) in &perms {
                src.copy_from_slice(ix);
                for (t, &q) in p.iter().enumerate() {
                    src[slots[t]] = ix[slots[q]];
                }
                let v = self.get(&src);
                if v.is_zero() {
                    continue;
                }
                match kind {
                    SymKind::Alternating if *sign < 0 => acc -= v,
                    _ => acc += v,
                }
            }
            acc * &weight
        });
        out.symmetries = self
            .symmetries
            .iter()
            .filter(|s| s.slots.iter().all(|x| !slots.contains(x)))
            .cloned()
            .collect();
        out.mark(slots, kind);
        Ok(out)
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries as `(multi-index, value)`.
    pub fn nonzeros(&self) -> Vec<(Vec<usize>, Rational)> {
        let k = self.slots();
        let mut ix = vec![0; k];
        let mut out = Vec::new();
        for (idx, v) in self.data.iter().enumerate() {
            if !v.is_zero() {
                unravel(idx, self.dim, k, &mut ix);
                out.push((ix.clone(), v.clone()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_expr::int;

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        let total: i64 = p.iter().map(|(_, s)| s).sum();
        assert_eq!(total, 0);
        assert!(p.contains(&(vec![1, 0, 2], -1)));
        assert!(p.contains(&(vec![1, 2, 0], 1)));
    }

    #[test]
    fn alternation_kills_symmetric() {
        let t = Tensor::from_fn(3, vec![Valence::Covariant; 2], |ix| int((ix[0] + ix[1]) as i64));
        let a = t.sym_alt(&[0, 1], SymKind::Alternating).unwrap();
        assert!(a.is_zero());
        let s = t.sym_alt(&[0, 1], SymKind::Symmetric).unwrap();
        assert_eq!(s.data(), t.data());
    }

    #[test]
    fn mixed_valence_rejected() {
        let t: Tensor = Tensor::zeros(2, vec![Valence::Covariant, Valence::Contravariant]);
        assert!(matches!(
            t.sym_alt(&[0, 1], SymKind::Symmetric),
            Err(TensorError::MixedValence(_))
        ));
    }
}
