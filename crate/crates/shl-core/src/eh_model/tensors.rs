use alloc::vec;

use super::{ModelError, ModelSpace};
use crate::linalg::Matrix;
use crate::scalar_expr::Rational;
use crate::tensor_algebra::{SymKind, Tensor, Valence};

/// The tensors built from the triple and ω₀.
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningTensors {
    /// Gram matrices of `g_{J_a}`.
    pub g: [Matrix; 3],
    /// `h₀(X, Y)Z = ω₀(X, Y)Z + Σ_a g_{J_a}(X, Y) J_a Z`, slots `(X, Y, Z, out)`.
    pub h0: Tensor,
    /// `Φ₀ = Σ_a g_{J_a} ⊙ g_{J_a}`.
    pub phi0: Tensor,
    /// `ĥ₀ = Id ⊗ ω₀⁻¹ + Σ_a J_a ⊗ g_{J_a}⁻¹`, slots `(Y, out, i, j)`.
    pub hhat0: Tensor,
}

/// One of the four bilinear forms whose inverse may be contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bilinear {
    Omega,
    /// `g_{J_a}` with `a ∈ {0, 1, 2}`.
    G(usize),
}

impl Bilinear {
    pub fn gram(&self, m: &ModelSpace) -> Matrix {
        match self {
            Bilinear::Omega => m.omega().clone(),
            Bilinear::G(a) => m.g(*a),
        }
    }

    /// Identify a Gram matrix with one of the admissible forms.
    pub fn identify(m: &ModelSpace, b: &Matrix) -> Result<Bilinear, ModelError> {
        if b == m.omega() {
            return Ok(Bilinear::Omega);
        }
        (0..3)
            .find(|&a| *b == m.g(a))
            .map(Bilinear::G)
            .ok_or(ModelError::NotAdmissible)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractMode {
    /// `A(B⁻¹, ·)`
    Left,
    /// `A(·, B⁻¹)`
    Right,
    /// `A(B⁻¹)`, the full contraction.
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Contracted {
    Endo(Matrix),
    Scalar(Rational),
}

/// Components `P^{ij}` of the inverse bivector, normalized so that
/// `B(Y, B⁻¹) = Σ P^{ij} B(Y, e_j) e_i = Y`; this is `(Bᵀ)⁻¹`.
pub fn inverse_bivector(b: &Matrix) -> Matrix {
    b.transpose().inverse().expect("admissible forms are nondegenerate")
}

/// Contract a covariant 2-tensor with the inverse of an admissible form.
pub fn inverse_contract(
    m: &ModelSpace,
    b: &Matrix,
    a: &Matrix,
    mode: ContractMode,
) -> Result<Contracted, ModelError> {
    let dim = m.dim();
    if a.rows() != dim || a.cols() != dim || b.rows() != dim || b.cols() != dim {
        return Err(ModelError::Shape { expected: dim });
    }
    Bilinear::identify(m, b)?;
    let p = inverse_bivector(b);
    Ok(match mode {
        // column Y of the result is Σ_{ij} P^{ij} A(Y, e_j) e_i, i.e. P Aᵀ
        ContractMode::Right => Contracted::Endo(p.mul(&a.transpose())),
        // Σ_{ij} P^{ij} A(e_i, Y) e_j, i.e. Pᵀ A
        ContractMode::Left => Contracted::Endo(p.transpose().mul(a)),
        ContractMode::Full => Contracted::Scalar(
            p.data().iter().zip(a.data()).map(|(x, y)| x * y).sum(),
        ),
    })
}

/// `(B ⊙ C)(y, z, u, v)`: the 1/6-weighted sum over the six ways of
/// splitting the four slots into two pairs, `B` on the first pair.
pub fn symmetric_product(b: &Matrix, c: &Matrix) -> Tensor {
    let dim = b.rows();
    let sixth = Rational::new(1, 6);
    let mut t = Tensor::from_fn(dim, vec![Valence::Covariant; 4], |ix| {
        let (y, z, u, v) = (ix[0], ix[1], ix[2], ix[3]);
        let terms = [
            (y, z, u, v),
            (y, u, z, v),
            (y, v, z, u),
            (z, u, y, v),
            (z, v, y, u),
            (u, v, y, z),
        ];
        let mut acc = Rational::zero();
        for (p, q, r, s) in terms {
            let x = &b[(p, q)];
            if x.is_zero() {
                continue;
            }
            let w = &c[(r, s)];
            if !w.is_zero() {
                acc += x * w;
            }
        }
        acc * &sixth
    });
    if b.transpose() == *b && c.transpose() == *c {
        t.mark(&[0, 1, 2, 3], SymKind::Symmetric);
    }
    t
}

pub fn defining_tensors(m: &ModelSpace) -> DefiningTensors {
    let dim = m.dim();
    let g: [Matrix; 3] = core::array::from_fn(|a| m.g(a));
    let omega = m.omega();

    let h0 = Tensor::from_fn(
        dim,
        vec![
            Valence::Covariant,
            Valence::Covariant,
            Valence::Covariant,
            Valence::Contravariant,
        ],
        |ix| {
            let (x, y, z, w) = (ix[0], ix[1], ix[2], ix[3]);
            let mut acc = if z == w {
                omega[(x, y)].clone()
            } else {
                Rational::zero()
            };
            for a in 0..3 {
                let ga = &g[a][(x, y)];
                if !ga.is_zero() {
                    acc += ga * &m.j(a)[(w, z)];
                }
            }
            acc
        },
    );

    let mut phi0 = Tensor::covariant(dim, 4);
    for ga in &g {
        phi0 = phi0.add(&symmetric_product(ga, ga)).unwrap();
    }
    phi0.mark(&[0, 1, 2, 3], SymKind::Symmetric);

    let p_omega = inverse_bivector(omega);
    let p_g: [Matrix; 3] = core::array::from_fn(|a| inverse_bivector(&g[a]));
    let hhat0 = Tensor::from_fn(
        dim,
        vec![
            Valence::Covariant,
            Valence::Contravariant,
            Valence::Contravariant,
            Valence::Contravariant,
        ],
        |ix| {
            let (y, out, i, j) = (ix[0], ix[1], ix[2], ix[3]);
            let mut acc = if y == out {
                p_omega[(i, j)].clone()
            } else {
                Rational::zero()
            };
            for a in 0..3 {
                let ja = &m.j(a)[(out, y)];
                if !ja.is_zero() {
                    acc += ja * &p_g[a][(i, j)];
                }
            }
            acc
        },
    );

    DefiningTensors { g, h0, phi0, hhat0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_sign_convention() {
        let m = ModelSpace::standard(2).unwrap();
        // g_{J₁}(e₁, f₃) = ω₀(e₁, J₁ f₃) = ω₀(e₁, −f₁) = −1
        assert_eq!(m.g(0)[(m.e(1), m.f(3))], Rational::from_int(-1));
        for a in 0..3 {
            let g = m.g(a);
            assert_eq!(g.transpose(), g);
        }
    }

    #[test]
    fn explicit_metric_coefficients() {
        // with g(X, Y) = ω₀(X, JY) the coordinate expressions are
        // g_I = −Σ(e_a ⊙ f_{n+a} − e_{n+a} ⊙ f_a), g_J = Σ(e_a e_a + f_a f_a − …),
        // g_K = Σ(e_a ⊙ e_{n+a} + f_{n+a} ⊙ f_a): every sign opposite to the
        // convention g(X, Y) = ω₀(JX, Y)
        let n = 2;
        let m = ModelSpace::standard(n).unwrap();
        let one = Rational::one();
        for a in 1..=n {
            let (e, en, f, fn_) = (m.e(a), m.e(n + a), m.f(a), m.f(n + a));
            assert_eq!(m.g(0)[(e, fn_)], -one.clone());
            assert_eq!(m.g(0)[(en, f)], one);
            assert_eq!(m.g(1)[(e, e)], one);
            assert_eq!(m.g(1)[(f, f)], one);
            assert_eq!(m.g(1)[(en, en)], -one.clone());
            assert_eq!(m.g(1)[(fn_, fn_)], -one.clone());
            assert_eq!(m.g(2)[(e, en)], one);
            assert_eq!(m.g(2)[(fn_, f)], one);
        }
        for a in 0..3 {
            // Gram matrix of ω₀(JX, Y) is Jᵀω₀ = −g
            assert_eq!(m.j(a).transpose().mul(m.omega()), m.g(a).neg());
        }
    }

    #[test]
    fn contraction_table_rows() {
        let m = ModelSpace::standard(2).unwrap();
        let om = m.omega().clone();
        assert_eq!(
            inverse_contract(&m, &om, &om, ContractMode::Full).unwrap(),
            Contracted::Scalar(Rational::from_int(8))
        );
        for a in 0..3 {
            assert_eq!(
                inverse_contract(&m, &om, &m.g(a), ContractMode::Right).unwrap(),
                Contracted::Endo(m.j(a).neg())
            );
        }
        assert_eq!(
            inverse_contract(&m, &om, &om, ContractMode::Right).unwrap(),
            Contracted::Endo(m.identity())
        );
        assert!(inverse_contract(&m, &m.identity(), &om, ContractMode::Full).is_err());
    }

    #[test]
    fn h0_on_diagonal_has_no_omega_term() {
        let m = ModelSpace::standard(2).unwrap();
        let d = defining_tensors(&m);
        let x = m.e(1);
        for z in 0..8 {
            for w in 0..8 {
                let mut expected = Rational::zero();
                for a in 0..3 {
                    expected += &d.g[a][(x, x)] * &m.j(a)[(w, z)];
                }
                assert_eq!(*d.h0.get(&[x, x, z, w]), expected);
            }
        }
    }
}
