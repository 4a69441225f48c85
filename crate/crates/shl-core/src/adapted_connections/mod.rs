//! Correction tensors relating an arbitrary connection to adapted ones:
//! the projections `w₁…w₄` of `V* ⊗ End(V)`, the contraction of `∇Φ` with
//! `ĥ₀`, the splitting map `s`, the `A^vol` correction and the change of the
//! canonical connection under a conformal rescaling of ω.

use alloc::vec;
use alloc::vec::Vec;

use crate::eh_model::{defining_tensors, inverse_bivector, ModelSpace};
use crate::linalg::Matrix;
use crate::scalar_expr::Rational;
use crate::tensor_algebra::{
    lower, one_form_action, raise, solve_a_tensor, EndoOneForm, SymKind, Tensor, TensorError,
    Valence,
};

mod pure;

pub use pure::{
    omega_hat_endo, pure_alpha1, pure_alpha2, pure_alpha3, pure_alpha4, rho_endo, PureFamily,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdaptedError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("the splitting map needs n ≥ 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("∇Φ-values must be symmetric in their last four slots")]
    NotSymmetric,
}

/// Part whose ω₀-form is symmetric:
/// `ω₀(Sym(B)X, Y) = ½(ω₀(BX, Y) + ω₀(BY, X))`.
pub fn sym_part(m: &ModelSpace, b: &Matrix) -> Matrix {
    let half = Rational::new(1, 2);
    b.add(&omega_adjoint(m, b)).scale(&half)
}

/// The complementary part `B − Sym(B)`.
pub fn asym_part(m: &ModelSpace, b: &Matrix) -> Matrix {
    let half = Rational::new(1, 2);
    b.sub(&omega_adjoint(m, b)).scale(&half)
}

/// The transpose used by Sym/Asym: `ω₀(BᵗX, Y) = ω₀(BY, X)`.
fn omega_adjoint(m: &ModelSpace, b: &Matrix) -> Matrix {
    // the Gram matrix of (X, Y) ↦ ω₀(BY, X) is −ΩB, so (Bᵗ)ᵀΩ = −ΩB and
    // (Bᵗ)ᵀ = ΩBΩ because Ω⁻¹ = −Ω
    let om = m.omega();
    om.mul(b).mul(om).transpose()
}

/// Projection of End(V) onto gl(n, ℍ): `¼(B − Σₐ JₐBJₐ)`.
pub fn pi_11(m: &ModelSpace, b: &Matrix) -> Matrix {
    let mut acc = b.clone();
    for j in m.triple() {
        acc = acc.sub(&j.mul(b).mul(j));
    }
    acc.scale(&Rational::new(1, 4))
}

/// `Sym ∘ π₁,₁`.
pub fn pi_s(m: &ModelSpace, b: &Matrix) -> Matrix {
    sym_part(m, &pi_11(m, b))
}

/// `Asym ∘ π₁,₁`.
pub fn pi_a(m: &ModelSpace, b: &Matrix) -> Matrix {
    asym_part(m, &pi_11(m, b))
}

/// The endomorphism `Y ↦ ω₀(X, Y) Z`.
pub fn rank_one(m: &ModelSpace, x: &[Rational], z: &[Rational]) -> Matrix {
    // row covector ω₀(X, ·) = Xᵀ Ω
    let om = m.omega();
    let dim = m.dim();
    let cov: Vec<Rational> = (0..dim)
        .map(|c| (0..dim).map(|r| &x[r] * &om[(r, c)]).sum())
        .collect();
    Matrix::from_fn(dim, dim, |r, c| &z[r] * &cov[c])
}

/// The four projections of an End(V)-valued 1-form.
#[derive(Clone, Debug, PartialEq)]
pub struct WComponents {
    pub w: [EndoOneForm; 4],
}

impl WComponents {
    pub fn sum(&self) -> EndoOneForm {
        self.w[1..].iter().fold(self.w[0].clone(), |acc, x| acc.add(x))
    }
}

fn map_pointwise(a: &EndoOneForm, mut f: impl FnMut(&Matrix) -> Matrix) -> EndoOneForm {
    let ms: Vec<Matrix> = (0..a.dim()).map(|x| f(&a.at(x))).collect();
    EndoOneForm::from_matrices(&ms)
}

/// `w₁ … w₄` applied pointwise to `A_X`.
pub fn w_project(m: &ModelSpace, a: &EndoOneForm) -> WComponents {
    let dim = m.dim();
    let inv = Rational::new(1, dim as i64);
    let id = m.identity();
    let trace_part = |b: &Matrix| id.scale(&(b.trace() * &inv));
    let sp1_trace = |b: &Matrix| {
        let mut acc = Matrix::zeros(dim, dim);
        for j in m.triple() {
            acc = acc.add(&j.scale(&(b.mul(j).trace() * &inv)));
        }
        acc
    };
    let w1 = map_pointwise(a, trace_part);
    let w2 = map_pointwise(a, |b| pi_a(m, b).sub(&trace_part(b)));
    let w3 = map_pointwise(a, |b| sym_part(m, &b.sub(&pi_11(m, b))).add(&sp1_trace(b)));
    let w4 = map_pointwise(a, |b| asym_part(m, &b.sub(&pi_11(m, b))));
    WComponents {
        w: [w1, w2, w3, w4],
    }
}

/// `c(Θ)(x, y, z) = Σₐ Θ(x, Jₐy, z, g_{Jₐ}⁻¹)` for `Θ ∈ V* ⊗ S⁴V*`.
pub fn hhat_contract(m: &ModelSpace, theta: &Tensor) -> Result<Tensor, AdaptedError> {
    let dim = m.dim();
    if theta.slots() != 5 || !theta.is_fully_covariant() {
        return Err(TensorError::SlotCount {
            expected: 5,
            found: theta.slots(),
        }
        .into());
    }
    if theta.dim() != dim {
        return Err(TensorError::Dimension(theta.dim(), dim).into());
    }
    if !theta.holds(&[1, 2, 3, 4], SymKind::Symmetric) {
        return Err(AdaptedError::NotSymmetric);
    }
    // contract the last two slots with each g_a⁻¹ first
    let mut partial: Vec<Tensor> = Vec::with_capacity(3);
    for a in 0..3 {
        let p = inverse_bivector(&m.g(a));
        let t = Tensor::from_fn(dim, vec![Valence::Covariant; 3], |ix| {
            let mut acc = Rational::zero();
            for i in 0..dim {
                for j in 0..dim {
                    let w = &p[(i, j)];
                    if !w.is_zero() {
                        let v = theta.get(&[ix[0], ix[1], ix[2], i, j]);
                        if !v.is_zero() {
                            acc += w * v;
                        }
                    }
                }
            }
            acc
        });
        partial.push(t);
    }
    Ok(Tensor::from_fn(dim, vec![Valence::Covariant; 3], |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        let mut acc = Rational::zero();
        for (a, t) in partial.iter().enumerate() {
            let j = m.j(a);
            for k in 0..dim {
                let c = &j[(k, y)];
                if !c.is_zero() {
                    acc += c * t.get(&[x, k, z]);
                }
            }
        }
        acc
    }))
}

/// Coefficients `k₁ … k₄` with `c(αₐ·Φ₀)(x, y, z) = kₐ ω₀(αₐ(x, y), z)`.
pub fn contraction_coefficients(n: usize) -> [Rational; 4] {
    let n = n as i64;
    [
        Rational::from_int(-8 * (2 * n - 1)),
        Rational::from_int(-8 * (n - 1)),
        Rational::new(16 * n, 3),
        Rational::new(-8 * (n + 1), 3),
    ]
}

/// `s(Θ) = Σₐ wₐ(c(Θ)♯)/kₐ`, where `c(Θ)♯` is `c(Θ)` with its last slot
/// raised through ω₀.
pub fn splitting_s(m: &ModelSpace, theta: &Tensor) -> Result<EndoOneForm, AdaptedError> {
    if m.n() < 2 {
        return Err(AdaptedError::DimensionTooSmall(m.n()));
    }
    let c = hhat_contract(m, theta)?;
    let raised = EndoOneForm::new(raise(m, &c)?)?;
    let w = w_project(m, &raised);
    let k = contraction_coefficients(m.n());
    let mut out = EndoOneForm::zero(m.dim());
    for (wa, ka) in w.w.iter().zip(&k) {
        out = out.add(&wa.scale(&ka.recip().expect("nonzero coefficient")));
    }
    Ok(out)
}

/// `p(α) = α·Φ₀`.
pub fn act_on_phi0(m: &ModelSpace, alpha: &EndoOneForm) -> Tensor {
    let phi0 = defining_tensors(m).phi0;
    one_form_action(alpha, &phi0).expect("Φ₀ is covariant")
}

/// `p(s(Θ)) − Θ`; zero exactly when Θ lies in the image of `p`.
pub fn round_trip_residual(m: &ModelSpace, theta: &Tensor) -> Result<Tensor, AdaptedError> {
    let s = splitting_s(m, theta)?;
    Ok(act_on_phi0(m, &s).sub(theta)?)
}

/// `Tr₂(A)(X) = Tr(A(X, ·))`.
pub fn trace2(a: &EndoOneForm) -> Vec<Rational> {
    (0..a.dim()).map(|x| a.at(x).trace()).collect()
}

/// `h(Y, Z)X = ω₀(Y, Z)X + Σₐ g_{Jₐ}(Y, Z) JₐX` on basis vectors.
fn h_apply(m: &ModelSpace, g: &[Matrix; 3], y: usize, z: usize, x: usize) -> Vec<Rational> {
    let dim = m.dim();
    let mut out = vec![Rational::zero(); dim];
    out[x] += m.omega()[(y, z)].clone();
    for (a, ga) in g.iter().enumerate() {
        let c = &ga[(y, z)];
        if !c.is_zero() {
            for (k, o) in out.iter_mut().enumerate() {
                *o += c * &m.j(a)[(k, x)];
            }
        }
    }
    out
}

/// `ω₀(A^vol(X, Y), Z) = ½C(X, Y, Z) − τ(h(Y, Z)X − h(X, Y)Z)/(8(n+1))`
/// where `τ = Tr₂` of the lift of `C` itself, i.e. `2·Tr₂(A)` with
/// `ω₀(A(X, Y), Z) = ½C(X, Y, Z)`.
///
/// The correction term has `Tr₂ = (4n+4)/(8(n+1))·τ = τ/2`, so this is the
/// normalization for which `Tr₂(A^vol) = 0`; using `Tr₂(A)` in place of `τ`
/// leaves `Tr₂(A^vol) = ½Tr₂(A)`.
pub fn avol_correction(m: &ModelSpace, c: &Tensor) -> Result<EndoOneForm, AdaptedError> {
    let a = solve_a_tensor(m, c)?;
    let tau = trace2(&a);
    let dim = m.dim();
    let g: [Matrix; 3] = core::array::from_fn(|i| m.g(i));
    let coeff = Rational::new(1, 4 * (m.n() as i64 + 1));
    let half = Rational::new(1, 2);
    let dot = |v: &[Rational]| -> Rational { v.iter().zip(&tau).map(|(p, q)| p * q).sum() };
    let lowered = Tensor::from_fn(dim, vec![Valence::Covariant; 3], |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        let hy = h_apply(m, &g, y, z, x);
        let hx = h_apply(m, &g, x, y, z);
        let corr = dot(&hy) - dot(&hx);
        &half * c.get(ix) - &coeff * &corr
    });
    Ok(EndoOneForm::new(raise(m, &lowered)?)?)
}

/// Which side the ω₀-raise of a covector is taken on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransposeConvention {
    /// `ω₀(ξᵀ, Y) = ξ(Y)`.
    Left,
    /// `ω₀(Y, ξᵀ) = ξ(Y)`.
    Right,
}

/// The symplectic transpose of a covector.
pub fn symplectic_transpose(m: &ModelSpace, xi: &[Rational], conv: TransposeConvention) -> Vec<Rational> {
    // ω₀(v, Y) = vᵀΩY, so Ωᵀv = ξ, v = (Ωᵀ)⁻¹ξ = Ωξ; the right raise is −Ωξ
    let v = m.omega().mul_vec(xi);
    match conv {
        TransposeConvention::Left => v,
        TransposeConvention::Right => v.into_iter().map(|x| -x).collect(),
    }
}

/// Change of the canonical connection under `ω ↦ f·ω`:
/// `−df ⊗ Id − (4n/(n+1)) π_S(ω ⊗ dfᵀ) + (n/(n+1)) Σₐ (df ∘ Jₐ) ⊗ Jₐ`.
pub fn conformal_change_delta(m: &ModelSpace, df: &[Rational]) -> EndoOneForm {
    conformal_change_delta_with(m, df, TransposeConvention::Left)
}

pub fn conformal_change_delta_with(
    m: &ModelSpace,
    df: &[Rational],
    conv: TransposeConvention,
) -> EndoOneForm {
    let dim = m.dim();
    let n = m.n() as i64;
    let dft = symplectic_transpose(m, df, conv);
    let c1 = Rational::new(4 * n, n + 1);
    let c2 = Rational::new(n, n + 1);
    let id = m.identity();
    let mut ms = Vec::with_capacity(dim);
    for x in 0..dim {
        let mut ex = vec![Rational::zero(); dim];
        ex[x] = Rational::one();
        let mut acc = id.scale(&-&df[x]);
        acc = acc.sub(&pi_s(m, &rank_one(m, &ex, &dft)).scale(&c1));
        for j in m.triple() {
            // (df ∘ Jₐ)(X) = df(JₐX)
            let v: Rational = (0..dim).map(|k| &df[k] * &j[(k, x)]).sum();
            if !v.is_zero() {
                acc = acc.add(&j.scale(&(&v * &c2)));
            }
        }
        ms.push(acc);
    }
    EndoOneForm::from_matrices(&ms)
}

/// Lowered form `ω₀(A(X, Y), Z)`.
pub fn lowered(m: &ModelSpace, a: &EndoOneForm) -> Tensor {
    lower(m, a.tensor())
}

#[cfg(test)]
mod tests;
