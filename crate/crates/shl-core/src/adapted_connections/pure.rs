//! Pure elements of the four modules `𝒲₁ … 𝒲₄`.

use super::{pi_a, pi_s};
use crate::eh_model::ModelSpace;
use crate::linalg::Matrix;
use crate::scalar_expr::Rational;
use crate::tensor_algebra::EndoOneForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PureFamily {
    Alpha1,
    Alpha2,
    Alpha3,
    Alpha4,
}

impl PureFamily {
    pub const ALL: [PureFamily; 4] = [
        PureFamily::Alpha1,
        PureFamily::Alpha2,
        PureFamily::Alpha3,
        PureFamily::Alpha4,
    ];

    pub fn index(&self) -> usize {
        *self as usize
    }
}

/// `α₁ = ξ ⊗ Id`.
pub fn pure_alpha1(m: &ModelSpace, xi: &[Rational]) -> EndoOneForm {
    EndoOneForm::pure(xi, &m.identity())
}

/// Traceless gl(n, ℍ)-element whose ω₀-form is skew: the `ω̂` datum.
pub fn omega_hat_endo(m: &ModelSpace, r: &Matrix) -> Matrix {
    let b = pi_a(m, r);
    let t = b.trace() * Rational::new(1, m.dim() as i64);
    b.sub(&m.identity().scale(&t))
}

/// so*(2n)-element whose ω₀-form is the symmetric `ρ`.
pub fn rho_endo(m: &ModelSpace, r: &Matrix) -> Matrix {
    pi_s(m, r)
}

/// `ω₀(α₂·, ·) = ξ ⊗ ω̂` with `ω̂ = ω₀(B·, ·)`, `B` built from `r`.
pub fn pure_alpha2(m: &ModelSpace, xi: &[Rational], r: &Matrix) -> EndoOneForm {
    EndoOneForm::pure(xi, &omega_hat_endo(m, r))
}

/// `ω₀(α₃·, ·) = ξ ⊗ ĝ_{J_b}`, `ĝ_{J_b} = ω̂(·, J_b·)`; since
/// `ω₀(X, J Y) = −ω₀(JX, Y)` the endomorphism is `−J_b B`.
pub fn pure_alpha3(m: &ModelSpace, xi: &[Rational], r: &Matrix, b: usize) -> EndoOneForm {
    let e = m.j(b).mul(&omega_hat_endo(m, r)).neg();
    EndoOneForm::pure(xi, &e)
}

/// `ω₀(α₄·, ·) = ξ ⊗ ρ(·, J_b·)`, endomorphism `−J_b D` for `D ∈ so*(2n)`.
pub fn pure_alpha4(m: &ModelSpace, xi: &[Rational], r: &Matrix, b: usize) -> EndoOneForm {
    let e = m.j(b).mul(&rho_endo(m, r)).neg();
    EndoOneForm::pure(xi, &e)
}
