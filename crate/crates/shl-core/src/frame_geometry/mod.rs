//! Coframes with symbolic coefficients on a single chart, their exterior
//! derivatives, the torsion of the flat frame connection, pointwise
//! classification, the two quaternionification constructions and the
//! linear cotangent model.
//!
//! A coframe is stored as its coefficient matrix `c`, with
//! `ϑⁱ = Σ_j cⁱ_j dx_j`; the dual frame at a point is `u = c(p)⁻¹` (columns).
//! The connection making `u` parallel has torsion `T = Σᵢ dϑⁱ ⊗ uᵢ`, whose
//! frame components are `Tⁱ_{ab} = dϑⁱ(u_a, u_b)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::linalg::Matrix;
use crate::rep_theory::{classify_torsion, classify_torsion_approx, Decomposition, RepError, TypeReport};
use crate::scalar_expr::{EvalError, Expr, Field, Rational, Real, Ring};
use crate::tensor_algebra::{SymKind, Tensor, TensorError, Valence};

mod cotangent;
pub mod examples;
mod forms;
mod quaternionify;

pub use cotangent::{cotangent_model, CotangentCheck, CotangentModel};
pub use forms::{DiffForm, Sampled};
pub use quaternionify::{quaternionify_alpha, quaternionify_beta};

use forms::eval_all;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FrameError {
    #[error("coframe has no forms")]
    Empty,
    #[error("form {row} has {len} coefficients, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("form {row} uses x{var}, but the chart has dimension {dim}")]
    VariableOutOfRange { row: usize, var: usize, dim: usize },
    #[error("a {kind} coframe cannot have dimension {dim}")]
    Dimension { kind: FrameKind, dim: usize },
    #[error("expected a {expected} coframe, got {got}")]
    WrongKind { expected: FrameKind, got: FrameKind },
    #[error("point has {got} coordinates, chart has dimension {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("coefficient matrix is singular at the point")]
    Singular,
    #[error("classifier is for n = {expected}, coframe has n = {got}")]
    ClassifierDimension { expected: usize, got: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// What the frame dual to a coframe is declared to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameKind {
    /// `(e₁…e_{2n}, f₁…f_{2n})`, a skew-Hermitian basis of the standard
    /// model at every point.
    SkewHermitian,
    /// `(e₁…e_m, f₁…f_m)` with `ω = Σ eⁱ ∧ fⁱ`.
    Symplectic,
    /// A symplectic frame that is also unitary: `J(e_a) = f_a`.
    Unitary,
}

impl FrameKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FrameKind::SkewHermitian => "skew_hermitian",
            FrameKind::Symplectic => "symplectic",
            FrameKind::Unitary => "unitary",
        }
    }

    fn admits(&self, dim: usize) -> bool {
        match self {
            FrameKind::SkewHermitian => dim >= 4 && dim % 4 == 0,
            FrameKind::Symplectic | FrameKind::Unitary => dim >= 2 && dim % 2 == 0,
        }
    }
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown frame kind `{0}` (expected skew_hermitian, symplectic or unitary)")]
pub struct ParseFrameKindError(pub String);

impl FromStr for FrameKind {
    type Err = ParseFrameKindError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "skew_hermitian" => Ok(FrameKind::SkewHermitian),
            "symplectic" => Ok(FrameKind::Symplectic),
            "unitary" => Ok(FrameKind::Unitary),
            other => Err(ParseFrameKindError(other.into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoFrame {
    kind: FrameKind,
    /// `forms[i][j]` is the coefficient of `dx_{j+1}` in `ϑⁱ`.
    forms: Vec<Vec<Expr>>,
}

impl CoFrame {
    pub fn new(kind: FrameKind, forms: Vec<Vec<Expr>>) -> Result<Self, FrameError> {
        let dim = forms.len();
        if dim == 0 {
            return Err(FrameError::Empty);
        }
        for (row, f) in forms.iter().enumerate() {
            if f.len() != dim {
                return Err(FrameError::NotSquare { row, len: f.len(), dim });
            }
            if let Some(var) = f.iter().map(Expr::max_var).max().filter(|&v| v > dim) {
                return Err(FrameError::VariableOutOfRange { row, var, dim });
            }
        }
        if !kind.admits(dim) {
            return Err(FrameError::Dimension { kind, dim });
        }
        Ok(CoFrame { kind, forms })
    }

    /// The coordinate coframe `(dx₁, …, dx_dim)`.
    pub fn identity(kind: FrameKind, dim: usize) -> Result<Self, FrameError> {
        let forms = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Expr::one() } else { Expr::zero() }).collect())
            .collect();
        CoFrame::new(kind, forms)
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    /// Quaternionic dimension of a skew-Hermitian coframe.
    pub fn n(&self) -> usize {
        self.dim() / 4
    }

    pub fn forms(&self) -> &[Vec<Expr>] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> DiffForm {
        DiffForm::one_form(&self.forms[i])
    }

    /// `dϑⁱ` for every form.
    pub fn exterior_derivatives(&self) -> Vec<DiffForm> {
        (0..self.dim()).map(|i| self.form(i).d()).collect()
    }

    /// `ω = Σ_a ϑ^{e_a} ∧ ϑ^{f_a}`, the first half of the forms paired with the
    /// second half.
    pub fn induced_omega(&self) -> DiffForm {
        let half = self.dim() / 2;
        let mut w = DiffForm::zero(self.dim(), 2);
        for a in 0..half {
            w = w.add(&self.form(a).wedge(&self.form(a + half)));
        }
        w
    }

    fn check_point(&self, p: &[Rational]) -> Result<(), FrameError> {
        if p.len() != self.dim() {
            return Err(FrameError::PointDimension {
                expected: self.dim(),
                got: p.len(),
            });
        }
        Ok(())
    }

    /// Coefficient matrix `c(p)`, row `i` holding `ϑⁱ`, and its inverse whose
    /// columns are the frame vectors.
    fn sample(&self, p: &[Rational]) -> Result<FramePoint, FrameError> {
        self.check_point(p)?;
        let dim = self.dim();
        let flat: Vec<Expr> = self.forms.iter().flatten().cloned().collect();
        let coeffs = eval_all(&flat, p)?;
        let dtheta: Vec<Sampled> = self
            .exterior_derivatives()
            .iter()
            .map(|f| f.at(p))
            .collect::<Result<_, _>>()?;
        let all_exact = coeffs.is_ok() && dtheta.iter().all(Sampled::is_exact);
        if all_exact {
            let c = Matrix::from_fn(dim, dim, |i, j| coeffs.as_ref().unwrap()[i * dim + j].clone());
            let u = c.inverse().ok_or(FrameError::Singular)?;
            let d = dtheta
                .into_iter()
                .map(|s| match s {
                    Sampled::Exact(t) => t,
                    Sampled::Approx(_) => unreachable!(),
                })
                .collect();
            Ok(FramePoint::Exact { u, dtheta: d })
        } else {
            let vals: Vec<Real> = match coeffs {
                Ok(r) => r.iter().map(Real::from_rational).collect(),
                Err(x) => x,
            };
            let c = Matrix::from_fn(dim, dim, |i, j| vals[i * dim + j].clone());
            let u = invert_real(&c)?;
            let d = dtheta.iter().map(Sampled::to_real).collect();
            Ok(FramePoint::Approx { u, dtheta: d })
        }
    }
}

fn invert_real(c: &Matrix<Real>) -> Result<Matrix<Real>, FrameError> {
    // the pivoting in `inverse` compares magnitudes; reject numerically
    // singular frames explicitly
    let u = c.inverse().ok_or(FrameError::Singular)?;
    if u.data().iter().any(|x| !x.to_f64().is_finite()) {
        return Err(FrameError::Singular);
    }
    Ok(u)
}

enum FramePoint {
    Exact { u: Matrix, dtheta: Vec<Tensor> },
    Approx { u: Matrix<Real>, dtheta: Vec<Tensor<Real>> },
}

const TORSION_SHAPE: [Valence; 3] = [Valence::Covariant, Valence::Covariant, Valence::Contravariant];

/// `Tⁱ_{ab} = Σ_{jk} dϑⁱ_{jk} u_{ja} u_{kb}`, laid out as `[a, b, i]`.
fn frame_components<S: Field>(u: &Matrix<S>, dtheta: &[Tensor<S>]) -> Tensor<S> {
    let dim = u.rows();
    let mut t = Tensor::<S>::zeros(dim, TORSION_SHAPE.to_vec());
    for (i, d) in dtheta.iter().enumerate() {
        // m[a][k] = Σ_j d[j, k] u[j, a]
        let mut m = Matrix::<S>::zeros(dim, dim);
        for j in 0..dim {
            for k in 0..dim {
                let djk = d.get(&[j, k]);
                if djk.is_zero() {
                    continue;
                }
                for a in 0..dim {
                    let uja = &u[(j, a)];
                    if !uja.is_zero() {
                        m[(a, k)] = m[(a, k)].add(&djk.mul(uja));
                    }
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = S::zero();
                for k in 0..dim {
                    let (x, y) = (&m[(a, k)], &u[(k, b)]);
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&x.mul(y));
                    }
                }
                t.set(&[a, b, i], acc);
            }
        }
    }
    t.mark(&[0, 1], SymKind::Alternating);
    t
}

/// `T^m_{jk} = Σᵢ dϑⁱ_{jk} u_{mi}`: the torsion in coordinates.
fn coordinate_components<S: Field>(u: &Matrix<S>, dtheta: &[Tensor<S>]) -> Tensor<S> {
    let dim = u.rows();
    let mut t = Tensor::<S>::zeros(dim, TORSION_SHAPE.to_vec());
    for (i, d) in dtheta.iter().enumerate() {
        for j in 0..dim {
            for k in 0..dim {
                let djk = d.get(&[j, k]);
                if djk.is_zero() {
                    continue;
                }
                for mm in 0..dim {
                    let umi = &u[(mm, i)];
                    if !umi.is_zero() {
                        let cur = t.get(&[j, k, mm]).add(&djk.mul(umi));
                        t.set(&[j, k, mm], cur);
                    }
                }
            }
        }
    }
    t.mark(&[0, 1], SymKind::Alternating);
    t
}

/// Torsion of the flat frame connection at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointTorsion {
    pub point: Vec<Rational>,
    /// Frame components, slots `(X, Y, out)`.
    pub torsion: Sampled,
}

impl PointTorsion {
    pub fn is_exact(&self) -> bool {
        self.torsion.is_exact()
    }

    pub fn exact(&self) -> Option<&Tensor> {
        match &self.torsion {
            Sampled::Exact(t) => Some(t),
            Sampled::Approx(_) => None,
        }
    }
}

/// Frame components of `T = dϑ` at `p`.
pub fn coframe_torsion(cf: &CoFrame, p: &[Rational]) -> Result<PointTorsion, FrameError> {
    let torsion = match cf.sample(p)? {
        FramePoint::Exact { u, dtheta } => Sampled::Exact(frame_components(&u, &dtheta)),
        FramePoint::Approx { u, dtheta } => Sampled::Approx(frame_components(&u, &dtheta)),
    };
    Ok(PointTorsion {
        point: p.to_vec(),
        torsion,
    })
}

/// The same torsion in the coordinate basis `∂x₁, …`.
pub fn coordinate_torsion(cf: &CoFrame, p: &[Rational]) -> Result<Sampled, FrameError> {
    Ok(match cf.sample(p)? {
        FramePoint::Exact { u, dtheta } => Sampled::Exact(coordinate_components(&u, &dtheta)),
        FramePoint::Approx { u, dtheta } => Sampled::Approx(coordinate_components(&u, &dtheta)),
    })
}

/// Classify the intrinsic torsion of a skew-Hermitian coframe at `p`; exact
/// points use the rational path, others the thresholded float path.
pub fn classify_frame_at(cf: &CoFrame, p: &[Rational], d: &Decomposition) -> Result<TypeReport, FrameError> {
    if cf.kind() != FrameKind::SkewHermitian {
        return Err(FrameError::WrongKind {
            expected: FrameKind::SkewHermitian,
            got: cf.kind(),
        });
    }
    if cf.n() != d.n() {
        return Err(FrameError::ClassifierDimension {
            expected: d.n(),
            got: cf.n(),
        });
    }
    let t = coframe_torsion(cf, p)?;
    Ok(match &t.torsion {
        Sampled::Exact(t) => classify_torsion(d, t)?,
        Sampled::Approx(t) => classify_torsion_approx(d, t)?,
    })
}

/// Comparison of `dω` with `π_ω(T)` in frame components at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct DOmegaCheck {
    pub exact: bool,
    /// Largest absolute difference of components.
    pub max_residual: f64,
    /// Largest absolute component of `dω`.
    pub max_domega: f64,
}

impl DOmegaCheck {
    /// Exact agreement on the rational path, relative agreement to 10⁻²⁰
    /// on the float path.
    pub fn holds(&self) -> bool {
        if self.exact {
            self.max_residual == 0.0
        } else {
            self.max_residual <= 1e-20 * self.max_domega.max(1.0)
        }
    }

    pub fn domega_vanishes(&self) -> bool {
        self.max_domega == 0.0
    }
}

/// `𝔖 ω₀(T(X, Y), Z)` for any ring.
fn cyclic_omega<S: Ring>(om: &Matrix, t: &Tensor<S>) -> Tensor<S> {
    let dim = om.rows();
    let low = Tensor::from_fn(dim, alloc::vec![Valence::Covariant; 3], |ix| {
        let mut acc = S::zero();
        for k in 0..dim {
            let w = &om[(k, ix[2])];
            if !w.is_zero() {
                acc = acc.add(&t.get(&[ix[0], ix[1], k]).mul(&S::from_rational(w)));
            }
        }
        acc
    });
    Tensor::from_fn(dim, alloc::vec![Valence::Covariant; 3], |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        low.get(&[x, y, z]).add(low.get(&[y, z, x])).add(low.get(&[z, x, y]))
    })
}

/// `F(u_a, u_b, u_c)` for a covariant 3-tensor given in coordinates.
fn to_frame3<S: Field>(f: &Tensor<S>, u: &Matrix<S>) -> Tensor<S> {
    let dim = u.rows();
    let mut cur = f.clone();
    for slot in 0..3 {
        cur = Tensor::from_fn(dim, alloc::vec![Valence::Covariant; 3], |ix| {
            let mut acc = S::zero();
            let mut jx = [ix[0], ix[1], ix[2]];
            for j in 0..dim {
                let ujb = &u[(j, ix[slot])];
                if ujb.is_zero() {
                    continue;
                }
                jx[slot] = j;
                let v = cur.get(&jx);
                if !v.is_zero() {
                    acc = acc.add(&v.mul(ujb));
                }
            }
            acc
        });
    }
    cur
}

fn max_abs<S: Field>(t: &Tensor<S>) -> f64 {
    t.data().iter().map(Field::magnitude).fold(0.0, f64::max)
}

/// Check that the exterior derivative of the induced `ω` equals `π_ω(T)` at
/// `p`. Works for skew-Hermitian and symplectic coframes alike: `ω₀` is then
/// the standard pairing of the first and second half of the frame.
pub fn domega_check(cf: &CoFrame, p: &[Rational]) -> Result<DOmegaCheck, FrameError> {
    let om = pairing_omega(cf.dim());
    let domega = cf.induced_omega().d().at(p)?;
    let point = cf.sample(p)?;
    Ok(match (point, domega) {
        (FramePoint::Exact { u, dtheta }, Sampled::Exact(dw)) => {
            let lhs = to_frame3(&dw, &u);
            let rhs = cyclic_omega(&om, &frame_components(&u, &dtheta));
            let diff = lhs.sub(&rhs)?;
            DOmegaCheck {
                exact: true,
                max_residual: max_abs(&diff),
                max_domega: max_abs(&lhs),
            }
        }
        (point, dw) => {
            let (u, dtheta) = match point {
                FramePoint::Exact { u, dtheta } => (
                    u.map(Real::from_rational),
                    dtheta.iter().map(|t| t.map(Real::from_rational)).collect::<Vec<_>>(),
                ),
                FramePoint::Approx { u, dtheta } => (u, dtheta),
            };
            let lhs = to_frame3(&dw.to_real(), &u);
            let rhs = cyclic_omega(&om, &frame_components(&u, &dtheta));
            let diff = lhs.sub(&rhs)?;
            DOmegaCheck {
                exact: false,
                max_residual: max_abs(&diff),
                max_domega: max_abs(&lhs),
            }
        }
    })
}

/// The constant pairing `ω₀(e_a, f_a) = 1` on `ℝ^dim` (first half against
/// second half). For `dim = 4n` this is the standard model's `ω₀`.
pub fn pairing_omega(dim: usize) -> Matrix {
    let half = dim / 2;
    Matrix::from_fn(dim, dim, |i, j| {
        if i < half && j == i + half {
            Rational::one()
        } else if j < half && i == j + half {
            -Rational::one()
        } else {
            Rational::zero()
        }
    })
}

#[cfg(test)]
mod tests;
