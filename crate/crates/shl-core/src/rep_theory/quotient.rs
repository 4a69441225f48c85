use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::algebra::{algebra_for_model, AlgebraKind, MatrixAlgebra};
use super::module::{casimir_from, torsion_action_matrix, torsion_space_dim, SparseMatrix};
use super::RepError;
use crate::eh_model::ModelSpace;
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::scalar_expr::Rational;
use crate::tensor_algebra::{
    check_torsion, pair_index, pi_omega, raise, torsion_coordinates, torsion_from_coordinates,
    Tensor,
};

/// Which structure group the torsion is classified for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    /// Almost hypercomplex skew-Hermitian, group SO*(2n).
    HsH,
    /// Almost quaternionic skew-Hermitian, group SO*(2n)Sp(1).
    QsH,
}

impl StructureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StructureKind::HsH => "hsH",
            StructureKind::QsH => "qsH",
        }
    }

    /// The structure algebra whose Spencer image is divided out.
    pub fn algebra_kind(&self) -> AlgebraKind {
        match self {
            StructureKind::HsH => AlgebraKind::SoStar,
            StructureKind::QsH => AlgebraKind::SoStarPlusSp1,
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown structure kind {0:?} (expected hsH or qsH)")]
pub struct ParseKindError(pub alloc::string::String);

impl FromStr for StructureKind {
    type Err = ParseKindError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hsH" | "hsh" | "HsH" => Ok(StructureKind::HsH),
            "qsH" | "qsh" | "QsH" => Ok(StructureKind::QsH),
            _ => Err(ParseKindError(s.into())),
        }
    }
}

/// `δ(e_x* ⊗ ξ)` in classifier coordinates.
fn delta_of_pure(x: usize, xi: &Matrix) -> SparseVec {
    let dim = xi.rows();
    let mut pairs = Vec::new();
    // δ(A)(a, b) = A(a)b − A(b)a with A(X) = [X = x]·ξ
    for b in x + 1..dim {
        for k in 0..dim {
            let v = &xi[(k, b)];
            if !v.is_zero() {
                pairs.push((pair_index(x, b, dim) * dim + k, v.clone()));
            }
        }
    }
    for a in 0..x {
        for k in 0..dim {
            let v = &xi[(k, a)];
            if !v.is_zero() {
                pairs.push((pair_index(a, x, dim) * dim + k, -v));
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

/// Echelon basis of `δ(V* ⊗ g)` for the span of the given endomorphisms,
/// together with the number of spanning vectors inserted.
pub fn delta_image(basis: &[Matrix]) -> (Echelon, usize) {
    let dim = basis.first().map_or(0, |b| b.rows());
    let mut ech = Echelon::new(torsion_space_dim(dim));
    let mut count = 0;
    for x in 0..dim {
        for xi in basis {
            ech.insert(&delta_of_pure(x, xi));
            count += 1;
        }
    }
    (ech, count)
}

/// `dim ker(δ|V*⊗g)` for a linearly independent basis of `g`.
pub fn delta_kernel_dim(basis: &[Matrix]) -> usize {
    let (ech, count) = delta_image(basis);
    count - ech.rank()
}

/// `W / δ(V* ⊗ g)` with the induced action of so*(2n) ⊕ sp(1).
#[derive(Clone, Debug)]
pub struct IntrinsicQuotient {
    kind: StructureKind,
    model: ModelSpace,
    image: Echelon,
    free: Vec<usize>,
    position: Vec<Option<usize>>,
    so_star: MatrixAlgebra,
    sp1: MatrixAlgebra,
    so_actions: Vec<SparseMatrix>,
    sp1_actions: Vec<SparseMatrix>,
}

pub fn intrinsic_quotient(kind: StructureKind, n: usize) -> Result<IntrinsicQuotient, RepError> {
    IntrinsicQuotient::new(&ModelSpace::standard(n)?, kind)
}

impl IntrinsicQuotient {
    pub fn new(model: &ModelSpace, kind: StructureKind) -> Result<Self, RepError> {
        let so_star = algebra_for_model(model, AlgebraKind::SoStar);
        let sp1 = algebra_for_model(model, AlgebraKind::Sp1);
        let mut g = so_star.basis.clone();
        if kind == StructureKind::QsH {
            g.extend(sp1.basis.iter().cloned());
        }
        let (image, count) = delta_image(&g);
        if image.rank() != count {
            return Err(RepError::NotInjective(match kind {
                StructureKind::HsH => "so*(2n)",
                StructureKind::QsH => "(so*(2n)+sp(1))",
            }));
        }
        let free = image.free_columns();
        let mut position = vec![None; image.dim()];
        for (q, &w) in free.iter().enumerate() {
            position[w] = Some(q);
        }
        let mut out = IntrinsicQuotient {
            kind,
            model: model.clone(),
            image,
            free,
            position,
            so_star,
            sp1,
            so_actions: Vec::new(),
            sp1_actions: Vec::new(),
        };
        out.so_actions = out.so_star.basis.iter().map(|x| out.quotient_action(x)).collect();
        out.sp1_actions = out.sp1.basis.iter().map(|x| out.quotient_action(x)).collect();
        Ok(out)
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn model(&self) -> &ModelSpace {
        &self.model
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.image.dim()
    }

    pub fn image_rank(&self) -> usize {
        self.image.rank()
    }

    /// The free columns of the echelon form, i.e. the `W`-coordinates that
    /// serve as quotient coordinates.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn so_star(&self) -> &MatrixAlgebra {
        &self.so_star
    }

    pub fn sp1(&self) -> &MatrixAlgebra {
        &self.sp1
    }

    /// Quotient action matrices, so*(2n) basis first, then J₁, J₂, J₃.
    pub fn actions(&self) -> impl Iterator<Item = &SparseMatrix> {
        self.so_actions.iter().chain(&self.sp1_actions)
    }

    /// Residual of a `W`-vector modulo the Spencer image.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.image.reduce(v)
    }

    /// Floating-point residual of a dense `W`-vector modulo the image.
    pub fn reduce_f64(&self, v: &[f64]) -> Vec<f64> {
        let mut out = v.to_vec();
        for row in self.image.rows() {
            let (p, _) = row.leading().expect("nonzero echelon row");
            let x = v[*p];
            if x != 0.0 {
                for (c, y) in row.entries() {
                    out[*c] -= x * y.to_f64();
                }
            }
        }
        out
    }

    /// Whether a `W`-vector lies in the Spencer image.
    pub fn in_image(&self, v: &SparseVec) -> bool {
        self.image.contains(v)
    }

    /// Quotient coordinates of a `W`-vector, as a sparse vector.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let r = self.reduce(v);
        SparseVec::from_pairs(
            r.entries()
                .iter()
                .map(|(w, x)| (self.position[*w].expect("residual on free columns"), x.clone()))
                .collect(),
        )
    }

    /// Quotient coordinates of a torsion tensor.
    pub fn project_tensor(&self, t: &Tensor) -> Result<SparseVec, RepError> {
        check_torsion(t)?;
        if t.dim() != self.model.dim() {
            return Err(crate::tensor_algebra::TensorError::Dimension(t.dim(), self.model.dim()).into());
        }
        Ok(self.project(&SparseVec::from_pairs(torsion_coordinates(t))))
    }

    /// The `W`-vector representing a quotient vector.
    pub fn lift(&self, q: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(q.entries().iter().map(|(i, x)| (self.free[*i], x.clone())).collect())
    }

    fn quotient_map(&self, f: impl Fn(&SparseVec) -> SparseVec) -> SparseMatrix {
        let cols = self
            .free
            .iter()
            .map(|&w| self.project(&f(&SparseVec::from_pairs(vec![(w, Rational::one())]))))
            .collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    /// The induced action of `ξ` (which must preserve the Spencer image).
    pub fn quotient_action(&self, xi: &Matrix) -> SparseMatrix {
        let rho = torsion_action_matrix(xi);
        self.quotient_map(|v| rho.apply(v))
    }

    pub fn casimir_so_star(&self) -> Result<SparseMatrix, RepError> {
        casimir_from(&self.so_star, &self.so_actions, |x| self.quotient_action(x))
    }

    pub fn casimir_sp1(&self) -> Result<SparseMatrix, RepError> {
        casimir_from(&self.sp1, &self.sp1_actions, |x| self.quotient_action(x))
    }

    /// `lift ∘ π_ω / 3` on `W`, the ω₀-projection onto torsions whose
    /// lowering is a 3-form.
    pub fn three_form_part(&self, t: &Tensor) -> Result<Tensor, RepError> {
        let c = pi_omega(&self.model, t)?.scale(&Rational::new(1, 3));
        Ok(raise(&self.model, &c)?)
    }

    /// The 3-form projector induced on the quotient.
    pub fn three_form_projector(&self) -> SparseMatrix {
        let dim = self.model.dim();
        self.quotient_map(|v| {
            let t = torsion_from_coordinates(dim, v.entries());
            let p = self.three_form_part(&t).expect("torsion input");
            SparseVec::from_pairs(torsion_coordinates(&p))
        })
    }

    /// `L(T)(Z) = Σ_c π_ω(T)(e_c, f_c, Z)`.
    pub fn lee_functional(&self, t: &Tensor) -> Result<Vec<Rational>, RepError> {
        let p = pi_omega(&self.model, t)?;
        let m = &self.model;
        Ok((0..m.dim())
            .map(|z| (1..=2 * m.n()).map(|c| p.get(&[m.e(c), m.f(c), z]).clone()).sum())
            .collect())
    }

    /// The Lee functional as a `dim V × dim Q` matrix on quotient
    /// coordinates.
    pub fn lee_matrix(&self) -> Matrix {
        let dim = self.model.dim();
        let mut out = Matrix::zeros(dim, self.dim());
        for (q, &w) in self.free.iter().enumerate() {
            let t = torsion_from_coordinates(dim, &[(w, Rational::one())]);
            let l = self.lee_functional(&t).expect("torsion input");
            for (z, x) in l.into_iter().enumerate() {
                out[(z, q)] = x;
            }
        }
        out
    }
}
