//! The standard linear model ℝ^{4n} ≅ [EH] with its skew-Hermitian basis
//! `(e₁…e_{2n}, f₁…f_{2n})`, hypercomplex triple and scalar 2-form.
//!
//! Matrices act on column vectors: `J e_c = Σ_r J[(r, c)] e_r`. Bilinear
//! forms are stored as Gram matrices, `B(X, Y) = Xᵀ B Y`.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::scalar_expr::Rational;
use crate::tensor_algebra::{Tensor, Valence};

mod tensors;

pub use tensors::{
    defining_tensors, inverse_bivector, inverse_contract, symmetric_product, Bilinear, ContractMode,
    Contracted, DefiningTensors,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("quaternionic dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("bilinear form is not ω₀ or one of the g_J forms of this model")]
    NotAdmissible,
    #[error("shape mismatch: expected a {expected}x{expected} matrix")]
    Shape { expected: usize },
    #[error("model invariant violated: {0}")]
    Invariant(&'static str),
}

/// The standard space with its defining structure.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpace {
    n: usize,
    j: [Matrix; 3],
    omega: Matrix,
}

impl ModelSpace {
    /// The standard model for quaternionic dimension `n ≥ 2`.
    pub fn standard(n: usize) -> Result<Self, ModelError> {
        if n < 2 {
            return Err(ModelError::DimensionTooSmall(n));
        }
        Ok(Self::build(n))
    }

    /// Same construction without the `n ≥ 2` restriction; used for linear
    /// models (e.g. the cotangent model) where `n = 1` is meaningful.
    pub fn standard_any(n: usize) -> Self {
        assert!(n >= 1);
        Self::build(n)
    }

    fn build(n: usize) -> Self {
        let dim = 4 * n;
        let mut j1 = Matrix::zeros(dim, dim);
        let mut j2 = Matrix::zeros(dim, dim);
        let one = Rational::one();
        let m1 = -Rational::one();
        // images of e_c, e_{c+n}, f_c, f_{c+n} for c < n
        for c in 0..n {
            let (e, en, f, fn_) = (c, c + n, 2 * n + c, 3 * n + c);
            // J1: e_c ↦ e_{c+n} ↦ −e_c, f_c ↦ f_{c+n} ↦ −f_c
            j1[(en, e)] = one.clone();
            j1[(e, en)] = m1.clone();
            j1[(fn_, f)] = one.clone();
            j1[(f, fn_)] = m1.clone();
            // J2: e_c ↦ f_c ↦ −e_c, e_{c+n} ↦ −f_{c+n}, f_{c+n} ↦ e_{c+n}
            j2[(f, e)] = one.clone();
            j2[(e, f)] = m1.clone();
            j2[(fn_, en)] = m1.clone();
            j2[(en, fn_)] = one.clone();
        }
        let j3 = j1.mul(&j2);
        let mut omega = Matrix::zeros(dim, dim);
        for r in 0..2 * n {
            omega[(r, 2 * n + r)] = one.clone();
            omega[(2 * n + r, r)] = m1.clone();
        }
        ModelSpace {
            n,
            j: [j1, j2, j3],
            omega,
        }
    }

    /// Replace the triple by `J'_a = Σ_b R_ab J_b`; `R` must be orthogonal
    /// with determinant 1 (checked through the quaternion relations).
    pub fn rotated(&self, r: &Matrix) -> Result<Self, ModelError> {
        if r.rows() != 3 || r.cols() != 3 {
            return Err(ModelError::Shape { expected: 3 });
        }
        let dim = self.dim();
        let mut j: [Matrix; 3] = core::array::from_fn(|_| Matrix::zeros(dim, dim));
        for (a, ja) in j.iter_mut().enumerate() {
            for b in 0..3 {
                if !r[(a, b)].is_zero() {
                    *ja = ja.add(&self.j[b].scale(&r[(a, b)]));
                }
            }
        }
        let out = ModelSpace {
            n: self.n,
            j,
            omega: self.omega.clone(),
        };
        out.check_invariants()?;
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        4 * self.n
    }

    /// `J_a` for `a ∈ {0, 1, 2}` (i.e. J₁, J₂, J₃).
    pub fn j(&self, a: usize) -> &Matrix {
        &self.j[a]
    }

    pub fn triple(&self) -> &[Matrix; 3] {
        &self.j
    }

    /// Gram matrix of ω₀.
    pub fn omega(&self) -> &Matrix {
        &self.omega
    }

    /// Gram matrix of `g_{J_a}(X, Y) = ω₀(X, J_a Y)`.
    pub fn g(&self, a: usize) -> Matrix {
        self.omega.mul(&self.j[a])
    }

    /// Index of `e_c` (`c` is 1-based, `1 ≤ c ≤ 2n`).
    pub fn e(&self, c: usize) -> usize {
        assert!((1..=2 * self.n).contains(&c));
        c - 1
    }

    /// Index of `f_c` (`c` is 1-based, `1 ≤ c ≤ 2n`).
    pub fn f(&self, c: usize) -> usize {
        assert!((1..=2 * self.n).contains(&c));
        2 * self.n + c - 1
    }

    pub fn omega_at(&self, x: usize, y: usize) -> &Rational {
        &self.omega[(x, y)]
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.dim())
    }

    /// Evaluate ω₀ on two vectors.
    pub fn omega_vec(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let oy = self.omega.mul_vec(y);
        x.iter().zip(&oy).map(|(a, b)| a * b).sum()
    }

    /// Verify the defining relations exactly.
    pub fn check_invariants(&self) -> Result<(), ModelError> {
        let id = self.identity();
        for a in 0..3 {
            if self.j[a].mul(&self.j[a]) != id.neg() {
                return Err(ModelError::Invariant("J_a² = −Id"));
            }
            if self.j[a].transpose().mul(&self.omega).mul(&self.j[a]) != self.omega {
                return Err(ModelError::Invariant("ω₀(J_a·, J_a·) = ω₀"));
            }
        }
        if self.j[0].mul(&self.j[1]) != self.j[2] {
            return Err(ModelError::Invariant("J₁J₂ = J₃"));
        }
        if self.omega.transpose() != self.omega.neg() {
            return Err(ModelError::Invariant("ω₀ antisymmetric"));
        }
        Ok(())
    }

    /// ω₀ as a covariant 2-tensor.
    pub fn omega_tensor(&self) -> Tensor {
        Tensor::from_bilinear(&self.omega)
    }

    /// The identity endomorphism as a (1,1)-tensor (covariant slot first).
    pub fn identity_tensor(&self) -> Tensor {
        Tensor::from_fn(
            self.dim(),
            vec![Valence::Covariant, Valence::Contravariant],
            |ix| {
                if ix[0] == ix[1] {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            },
        )
    }

    /// Rational rotations in SO(3) used to test independence of the
    /// admissible triple: signed permutations plus a few Cayley transforms.
    pub fn sample_rotations() -> Vec<Matrix> {
        let mut out = vec![
            Matrix::from_ints(3, 3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]),
            Matrix::from_ints(3, 3, &[0, 1, 0, -1, 0, 0, 0, 0, 1]),
            Matrix::from_ints(3, 3, &[-1, 0, 0, 0, -1, 0, 0, 0, 1]),
        ];
        for (p, q, s) in [(1i64, 2i64, 3i64), (2, -1, 1), (1, 1, -1)] {
            out.push(cayley(p, q, s));
        }
        out
    }
}

/// `(I − S)(I + S)⁻¹` for the skew matrix with entries `p, q, s`.
fn cayley(p: i64, q: i64, s: i64) -> Matrix {
    let skew = Matrix::from_ints(3, 3, &[0, -s, q, s, 0, -p, -q, p, 0]);
    let id = Matrix::identity(3);
    id.sub(&skew).mul(&id.add(&skew).inverse().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_actions_at_n2() {
        let m = ModelSpace::standard(2).unwrap();
        m.check_invariants().unwrap();
        let col = |a: usize, v: usize| m.j(a).column(v);
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); 8];
            v[i] = Rational::one();
            v
        };
        assert_eq!(col(0, m.e(1)), unit(m.e(3)));
        assert_eq!(col(1, m.e(1)), unit(m.f(1)));
        assert_eq!(col(2, m.e(1)), unit(m.f(3)));
        let minus_f3: Vec<Rational> = unit(m.f(3)).iter().map(|x| -x).collect();
        assert_eq!(col(1, m.e(3)), minus_f3);
        assert_eq!(*m.omega_at(m.e(1), m.f(1)), Rational::one());
        assert!(m.omega_at(m.e(1), m.e(2)).is_zero());
        assert!(m.omega_at(m.e(1), m.f(2)).is_zero());
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(ModelSpace::standard(1), Err(ModelError::DimensionTooSmall(1)));
    }

    #[test]
    fn rotations_preserve_relations() {
        let m = ModelSpace::standard(2).unwrap();
        for r in ModelSpace::sample_rotations() {
            m.rotated(&r).unwrap();
        }
    }
}
