use alloc::vec;
use alloc::vec::Vec;

use super::tensor::{ravel, unravel};
use super::{SymKind, Tensor, TensorError, Valence};
use crate::eh_model::ModelSpace;
use crate::linalg::Matrix;
use crate::scalar_expr::{Rational, Ring};

const TORSION_SHAPE: [Valence; 3] = [Valence::Covariant, Valence::Covariant, Valence::Contravariant];

/// An endomorphism-valued 1-form `X ↦ A(X)`, stored as a tensor with slots
/// `(X, Y, out)`: `A(X)Y = Σ_k A[X, Y, k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoOneForm<S = Rational>(Tensor<S>);

impl<S: Ring> EndoOneForm<S> {
    pub fn new(t: Tensor<S>) -> Result<Self, TensorError> {
        check_shape(&t, &TORSION_SHAPE)?;
        Ok(EndoOneForm(t))
    }

    pub fn zero(dim: usize) -> Self {
        EndoOneForm(Tensor::zeros(dim, TORSION_SHAPE.to_vec()))
    }

    /// `f(x, y, k)` is the `e_k`-component of `A(e_x)e_y`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> S) -> Self {
        EndoOneForm(Tensor::from_fn(dim, TORSION_SHAPE.to_vec(), |ix| f(ix[0], ix[1], ix[2])))
    }

    /// From the matrices `A(e_x)`.
    pub fn from_matrices(ms: &[Matrix<S>]) -> Self {
        let dim = ms.len();
        Self::from_fn(dim, |x, y, k| ms[x][(k, y)].clone())
    }

    pub fn tensor(&self) -> &Tensor<S> {
        &self.0
    }

    pub fn into_tensor(self) -> Tensor<S> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, x: usize, y: usize, k: usize) -> &S {
        self.0.get(&[x, y, k])
    }

    /// The matrix of `A(e_x)`.
    pub fn at(&self, x: usize) -> Matrix<S> {
        let d = self.dim();
        Matrix::from_fn(d, d, |k, y| self.get(x, y, k).clone())
    }

    /// `A(v)` for a vector `v`.
    pub fn at_vector(&self, v: &[S]) -> Matrix<S> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (x, vx) in v.iter().enumerate() {
            if !vx.is_zero() {
                m = m.add(&self.at(x).scale(vx));
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        EndoOneForm(self.0.add(&other.0).expect("same shape"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        EndoOneForm(self.0.sub(&other.0).expect("same shape"))
    }

    pub fn scale(&self, k: &S) -> Self {
        EndoOneForm(self.0.scale(k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl EndoOneForm<Rational> {
    /// `ξ ⊗ B`: `A(X) = ξ(X)·B`.
    pub fn pure(xi: &[Rational], b: &Matrix) -> Self {
        let dim = xi.len();
        Self::from_fn(dim, |x, y, k| {
            if xi[x].is_zero() {
                Rational::zero()
            } else {
                &xi[x] * &b[(k, y)]
            }
        })
    }
}

fn check_shape<S: Ring>(t: &Tensor<S>, shape: &[Valence]) -> Result<(), TensorError> {
    if t.slots() != shape.len() {
        return Err(TensorError::SlotCount {
            expected: shape.len(),
            found: t.slots(),
        });
    }
    for (slot, (a, b)) in t.valences().iter().zip(shape).enumerate() {
        if a != b {
            return Err(TensorError::Valence { slot });
        }
    }
    Ok(())
}

/// Check that a tensor has the shape of a torsion tensor, `Λ²V* ⊗ V`, and
/// is antisymmetric in its covariant slots.
pub fn check_torsion<S: Ring>(t: &Tensor<S>) -> Result<(), TensorError> {
    check_shape(t, &TORSION_SHAPE)?;
    if !t.holds(&[0, 1], SymKind::Alternating) {
        return Err(TensorError::SymmetryViolated {
            slots: vec![0, 1],
            kind: SymKind::Alternating,
        });
    }
    Ok(())
}

/// The Spencer alternation `δ(A)(X, Y) = A(X)Y − A(Y)X`.
pub fn spencer_delta<S: Ring>(a: &EndoOneForm<S>) -> Tensor<S> {
    let dim = a.dim();
    let mut t = Tensor::from_fn(dim, TORSION_SHAPE.to_vec(), |ix| {
        a.get(ix[0], ix[1], ix[2]).sub(a.get(ix[1], ix[0], ix[2]))
    });
    t.mark(&[0, 1], SymKind::Alternating);
    t
}

/// The action of an End(V)-valued 1-form on a covariant tensor:
/// `(α·F)(u, X₁, …, X_k) = −Σᵢ F(X₁, …, α(u)Xᵢ, …, X_k)`.
///
/// The new slot `u` comes first, so that e.g. `α·Φ₀` is laid out like a
/// covariant derivative `∇Φ` with the derivative direction in front.
pub fn one_form_action(alpha: &EndoOneForm, f: &Tensor) -> Result<Tensor, TensorError> {
    if !f.is_fully_covariant() {
        let slot = f
            .valences()
            .iter()
            .position(|v| *v == Valence::Contravariant)
            .unwrap();
        return Err(TensorError::Valence { slot });
    }
    if f.dim() != alpha.dim() {
        return Err(TensorError::Dimension(f.dim(), alpha.dim()));
    }
    let dim = f.dim();
    let k = f.slots();
    let mut out = Tensor::covariant(dim, k + 1);
    let mut ix = vec![0; k + 1];
    // F(…, α(u)Xᵢ, …) = Σ_m α[u, Xᵢ, m] F(…, e_m, …); iterate over the
    // nonzero entries of F and scatter
    let alpha_t = alpha.tensor();
    let mut data = vec![Rational::zero(); out.data().len()];
    for (m_ix, fv) in f.nonzeros() {
        for slot in 0..k {
            let m = m_ix[slot];
            for u in 0..dim {
                for xi in 0..dim {
                    let a = alpha_t.get(&[u, xi, m]);
                    if a.is_zero() {
                        continue;
                    }
                    ix[0] = u;
                    ix[1..].copy_from_slice(&m_ix);
                    ix[1 + slot] = xi;
                    let idx = ravel(&ix, dim);
                    data[idx] -= a * &fv;
                }
            }
        }
    }
    out = Tensor::from_data(dim, out.valences().to_vec(), data)?;
    for s in f.symmetries() {
        let shifted: Vec<usize> = s.slots.iter().map(|x| x + 1).collect();
        out.mark(&shifted, s.kind);
    }
    Ok(out)
}

/// `π_ω(T)(X, Y, Z) = 𝔖 ω₀(T(X, Y), Z)`, the cyclic sum.
pub fn pi_omega(m: &ModelSpace, t: &Tensor) -> Result<Tensor, TensorError> {
    check_torsion(t)?;
    let lowered = lower(m, t);
    let mut out = Tensor::from_fn(m.dim(), vec![Valence::Covariant; 3], |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        lowered.get(&[x, y, z]) + lowered.get(&[y, z, x]) + lowered.get(&[z, x, y])
    });
    out.mark(&[0, 1, 2], SymKind::Alternating);
    Ok(out)
}

/// `ω₀(T(X, Y), Z)` as a covariant 3-tensor, for any tensor with slots
/// `(X, Y, out)`.
pub fn lower(m: &ModelSpace, t: &Tensor) -> Tensor {
    let dim = m.dim();
    let om = m.omega();
    Tensor::from_fn(dim, vec![Valence::Covariant; 3], |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        let mut acc = Rational::zero();
        for k in 0..dim {
            let w = &om[(k, z)];
            if w.is_zero() {
                continue;
            }
            let v = t.get(&[x, y, k]);
            if !v.is_zero() {
                acc += v * w;
            }
        }
        acc
    })
}

/// Raise the last slot of a covariant 3-tensor through ω₀: the result `R`
/// satisfies `ω₀(R(X, Y), Z) = C(X, Y, Z)`.
pub fn raise(m: &ModelSpace, c: &Tensor) -> Result<Tensor, TensorError> {
    check_shape(c, &[Valence::Covariant; 3])?;
    let dim = m.dim();
    let om = m.omega();
    // ω₀(v, ·) = F is Ωᵀv = F, and (Ωᵀ)⁻¹ = Ω
    Ok(Tensor::from_fn(dim, TORSION_SHAPE.to_vec(), |ix| {
        let (x, y, k) = (ix[0], ix[1], ix[2]);
        let mut acc = Rational::zero();
        for z in 0..dim {
            let w = &om[(k, z)];
            if w.is_zero() {
                continue;
            }
            let v = c.get(&[x, y, z]);
            if !v.is_zero() {
                acc += w * v;
            }
        }
        acc
    }))
}

/// The endomorphism-valued 1-form with `ω₀(A(X, Y), Z) = ½ C(X, Y, Z)`.
pub fn solve_a_tensor(m: &ModelSpace, c: &Tensor) -> Result<EndoOneForm, TensorError> {
    check_shape(c, &[Valence::Covariant; 3])?;
    if !c.holds(&[1, 2], SymKind::Alternating) {
        return Err(TensorError::SymmetryViolated {
            slots: vec![1, 2],
            kind: SymKind::Alternating,
        });
    }
    let half = Rational::new(1, 2);
    EndoOneForm::new(raise(m, &c.scale(&half))?)
}

/// Flat index of `(x, y, k)` with `x < y` in the coordinates of
/// `Λ²V* ⊗ V` used by the classifier: `pair(x, y)·dim + k`.
pub fn torsion_coordinates(t: &Tensor) -> Vec<(usize, Rational)> {
    let dim = t.dim();
    let mut out = Vec::new();
    for x in 0..dim {
        for y in x + 1..dim {
            for k in 0..dim {
                let v = t.get(&[x, y, k]);
                if !v.is_zero() {
                    out.push((pair_index(x, y, dim) * dim + k, v.clone()));
                }
            }
        }
    }
    out
}

/// Index of the pair `x < y` in lexicographic order.
pub fn pair_index(x: usize, y: usize, dim: usize) -> usize {
    debug_assert!(x < y && y < dim);
    x * (2 * dim - x - 1) / 2 + (y - x - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(p: usize, dim: usize) -> (usize, usize) {
    let mut x = 0;
    let mut start = 0;
    loop {
        let row = dim - x - 1;
        if p < start + row {
            return (x, x + 1 + (p - start));
        }
        start += row;
        x += 1;
    }
}

/// Rebuild a torsion tensor from classifier coordinates.
pub fn torsion_from_coordinates(dim: usize, coords: &[(usize, Rational)]) -> Tensor {
    let mut t = Tensor::zeros(dim, TORSION_SHAPE.to_vec());
    for (idx, v) in coords {
        let (p, k) = (idx / dim, idx % dim);
        let (x, y) = pair_from_index(p, dim);
        t.set(&[x, y, k], v.clone());
        t.set(&[y, x, k], -v);
    }
    t.mark(&[0, 1], SymKind::Alternating);
    t
}

/// Iterate over every multi-index of a tensor shape.
pub fn for_each_index(dim: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut ix = vec![0; k];
    for idx in 0..dim.pow(k as u32) {
        unravel(idx, dim, k, &mut ix);
        f(&ix);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_expr::int;

    #[test]
    fn pair_index_roundtrip() {
        let dim = 8;
        let mut p = 0;
        for x in 0..dim {
            for y in x + 1..dim {
                assert_eq!(pair_index(x, y, dim), p);
                assert_eq!(pair_from_index(p, dim), (x, y));
                p += 1;
            }
        }
    }

    #[test]
    fn delta_of_xi_id() {
        let m = ModelSpace::standard(2).unwrap();
        let xi: Vec<Rational> = (0..8).map(|i| int(i as i64 - 3)).collect();
        let a = EndoOneForm::pure(&xi, &m.identity());
        let t = spencer_delta(&a);
        for_each_index(8, 3, |ix| {
            let (x, y, k) = (ix[0], ix[1], ix[2]);
            let mut expected = Rational::zero();
            if k == y {
                expected += xi[x].clone();
            }
            if k == x {
                expected -= xi[y].clone();
            }
            assert_eq!(*t.get(ix), expected);
        });
    }

    #[test]
    fn solve_of_xi_omega_is_half_xi_id() {
        let m = ModelSpace::standard(2).unwrap();
        let xi: Vec<Rational> = (0..8).map(|i| int((i * i) as i64 % 5 - 2)).collect();
        let c = Tensor::from_fn(8, vec![Valence::Covariant; 3], |ix| {
            &xi[ix[0]] * m.omega_at(ix[1], ix[2])
        });
        let a = solve_a_tensor(&m, &c).unwrap();
        let expected = EndoOneForm::pure(&xi, &m.identity()).scale(&Rational::new(1, 2));
        assert_eq!(a, expected);
    }
}
