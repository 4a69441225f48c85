use alloc::vec::Vec;

use super::RepError;
use crate::eh_model::ModelSpace;
use crate::linalg::Matrix;
use crate::scalar_expr::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// Endomorphisms commuting with the triple and preserving ω₀.
    SoStar,
    /// Span of the triple.
    Sp1,
    /// Commutant of the triple.
    GlNH,
    /// Endomorphisms preserving ω₀.
    SpOmega,
    SoStarPlusSp1,
}

impl AlgebraKind {
    pub fn expected_dim(&self, n: usize) -> usize {
        match self {
            AlgebraKind::SoStar => n * (2 * n - 1),
            AlgebraKind::Sp1 => 3,
            AlgebraKind::GlNH => 4 * n * n,
            AlgebraKind::SpOmega => 2 * n * (4 * n + 1),
            AlgebraKind::SoStarPlusSp1 => n * (2 * n - 1) + 3,
        }
    }
}

/// A matrix Lie algebra given by a basis of `4n × 4n` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixAlgebra {
    pub kind: AlgebraKind,
    pub n: usize,
    pub basis: Vec<Matrix>,
}

/// Solve a homogeneous system of linear conditions on `X ∈ End(V)`, each
/// given as a linear map `X ↦ L(X)` evaluated on the matrix units.
fn solve_conditions(dim: usize, conditions: &[&dyn Fn(&Matrix) -> Matrix]) -> Vec<Matrix> {
    let unknowns = dim * dim;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut images: Vec<Vec<Matrix>> = Vec::new();
    for cond in conditions {
        let mut per_unit = Vec::with_capacity(unknowns);
        for u in 0..unknowns {
            let mut e = Matrix::zeros(dim, dim);
            e[(u / dim, u % dim)] = Rational::one();
            per_unit.push(cond(&e));
        }
        images.push(per_unit);
    }
    for per_unit in &images {
        for entry in 0..unknowns {
            let row: Vec<Rational> = per_unit
                .iter()
                .map(|m| m.data()[entry].clone())
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(1, unknowns)
    } else {
        Matrix::from_rows(rows)
    };
    system
        .kernel()
        .into_iter()
        .map(|v| Matrix::from_fn(dim, dim, |r, c| v[r * dim + c].clone()))
        .collect()
}

/// Basis of the requested algebra, computed as an exact kernel.
pub fn lie_algebra_basis(kind: AlgebraKind, n: usize) -> Result<MatrixAlgebra, RepError> {
    let m = ModelSpace::standard(n)?;
    Ok(algebra_for_model(&m, kind))
}

/// Same as [`lie_algebra_basis`] for an explicit (possibly rotated) model.
pub fn algebra_for_model(m: &ModelSpace, kind: AlgebraKind) -> MatrixAlgebra {
    let dim = m.dim();
    let om = m.omega().clone();
    let commute = |a: usize| {
        let j = m.j(a).clone();
        move |x: &Matrix| x.mul(&j).sub(&j.mul(x))
    };
    let symplectic = |x: &Matrix| x.transpose().mul(&om).add(&om.mul(x));
    let (c0, c1, c2) = (commute(0), commute(1), commute(2));
    let basis = match kind {
        AlgebraKind::Sp1 => m.triple().to_vec(),
        AlgebraKind::SoStar => solve_conditions(dim, &[&c0, &c1, &c2, &symplectic]),
        AlgebraKind::GlNH => solve_conditions(dim, &[&c0, &c1, &c2]),
        AlgebraKind::SpOmega => solve_conditions(dim, &[&symplectic]),
        AlgebraKind::SoStarPlusSp1 => {
            let mut b = solve_conditions(dim, &[&c0, &c1, &c2, &symplectic]);
            b.extend(m.triple().iter().cloned());
            b
        }
    };
    MatrixAlgebra {
        kind,
        n: m.n(),
        basis,
    }
}

impl MatrixAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in the basis, `None` if `x` is not in the span.
    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<Rational>> {
        let entries = x.rows() * x.cols();
        let a = Matrix::from_fn(entries, self.basis.len(), |r, c| self.basis[c].data()[r].clone());
        a.solve(x.data())
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.coordinates(x).is_some()
    }

    /// Basis is linearly independent (rank check).
    pub fn is_independent(&self) -> bool {
        let entries = self.basis.first().map_or(0, |b| b.rows() * b.cols());
        let a = Matrix::from_fn(self.basis.len(), entries, |r, c| self.basis[r].data()[c].clone());
        a.rank() == self.basis.len()
    }

    /// Structure constants `[ξ_i, ξ_j] = Σ_k c_{ij}^k ξ_k`; fails if the
    /// span is not closed under commutators.
    pub fn structure_constants(&self) -> Result<Vec<Vec<Vec<Rational>>>, RepError> {
        let d = self.dim();
        let mut out = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let br = self.basis[i].commutator(&self.basis[j]);
                let coords = self
                    .coordinates(&br)
                    .ok_or(RepError::NotClosed { i, j })?;
                row.push(coords);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Gram matrix of the trace form `B(ξ, η) = Tr(ξη)`.
    pub fn trace_form(&self) -> Matrix {
        let d = self.dim();
        Matrix::from_fn(d, d, |i, j| self.basis[i].mul(&self.basis[j]).trace())
    }

    /// The B-dual basis `ξⁱ` with `Tr(ξ_i ξ^j) = δ_ij`.
    pub fn dual_basis(&self) -> Result<Vec<Matrix>, RepError> {
        let g = self.trace_form();
        let ginv = g.inverse().ok_or(RepError::DegenerateTraceForm)?;
        let d = self.dim();
        let dim = self.basis[0].rows();
        Ok((0..d)
            .map(|i| {
                let mut acc = Matrix::zeros(dim, dim);
                for j in 0..d {
                    let c = &ginv[(j, i)];
                    if !c.is_zero() {
                        acc = acc.add(&self.basis[j].scale(c));
                    }
                }
                acc
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_at_n2() {
        for kind in [
            AlgebraKind::SoStar,
            AlgebraKind::Sp1,
            AlgebraKind::GlNH,
            AlgebraKind::SpOmega,
            AlgebraKind::SoStarPlusSp1,
        ] {
            let a = lie_algebra_basis(kind, 2).unwrap();
            assert_eq!(a.dim(), kind.expected_dim(2), "{kind:?}");
            assert!(a.is_independent());
        }
    }

    #[test]
    fn sp1_bracket() {
        let m = ModelSpace::standard(2).unwrap();
        let br = m.j(0).commutator(m.j(1));
        assert_eq!(br, m.j(2).scale(&Rational::from_int(2)));
    }

    #[test]
    fn so_star_closed_and_dual() {
        let a = lie_algebra_basis(AlgebraKind::SoStarPlusSp1, 2).unwrap();
        a.structure_constants().unwrap();
        let dual = a.dual_basis().unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let t = a.basis[i].mul(&dual[j]).trace();
                assert_eq!(t, if i == j { Rational::one() } else { Rational::zero() });
            }
        }
    }
}
