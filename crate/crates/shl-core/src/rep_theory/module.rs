use alloc::vec;
use alloc::vec::Vec;

use super::algebra::MatrixAlgebra;
use super::RepError;
use crate::linalg::{Matrix, SparseVec};
use crate::scalar_expr::Rational;
use crate::tensor_algebra::{pair_index, Tensor, Valence};
use crate::tensor_algebra::for_each_index;

/// Sparse square-or-rectangular matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        SparseMatrix { rows, cols }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.cols[c]
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (c, x) in v.entries() {
            for (r, y) in self.cols[*c].entries() {
                pairs.push((*r, x * y));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn apply_dense(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, y) in self.cols[c].entries() {
                out[*r] += x * y;
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.axpy(&Rational::one(), b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col.entries() {
                m[(r.clone(), c)] = x.clone();
            }
        }
        m
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        SparseMatrix {
            rows: m.rows(),
            cols: (0..m.cols()).map(|c| SparseVec::from_dense(&m.column(c))).collect(),
        }
    }

    /// Dense `self · d`.
    pub fn mul_dense_right(&self, d: &Matrix) -> Matrix {
        assert_eq!(self.cols(), d.rows());
        let mut out = Matrix::zeros(self.rows, d.cols());
        for k in 0..self.cols() {
            for (r, x) in self.cols[k].entries() {
                for j in 0..d.cols() {
                    let y = &d[(k, j)];
                    if !y.is_zero() {
                        out[(*r, j)] = &out[(*r, j)] + &(x * y);
                    }
                }
            }
        }
        out
    }

    /// Dense `d · self`.
    pub fn mul_dense_left(&self, d: &Matrix) -> Matrix {
        assert_eq!(d.cols(), self.rows);
        let mut out = Matrix::zeros(d.rows(), self.cols());
        for (c, col) in self.cols.iter().enumerate() {
            for (k, x) in col.entries() {
                for i in 0..d.rows() {
                    let y = &d[(i, *k)];
                    if !y.is_zero() {
                        out[(i, c)] = &out[(i, c)] + &(y * x);
                    }
                }
            }
        }
        out
    }
}

/// Image of the unit tensor at multi-index `ix` under `ξ`, by the Leibniz
/// rule: covariant slots pick up `−ξᵀ`, contravariant slots `ξ`.
pub(crate) fn act_on_unit(
    xi: &Matrix,
    valences: &[Valence],
    ix: &[usize],
    mut emit: impl FnMut(&[usize], Rational),
) {
    let dim = xi.rows();
    let mut jx = ix.to_vec();
    for (s, val) in valences.iter().enumerate() {
        let i = ix[s];
        match val {
            Valence::Covariant => {
                for j in 0..dim {
                    let x = &xi[(i, j)];
                    if !x.is_zero() {
                        jx[s] = j;
                        emit(&jx, -x);
                    }
                }
            }
            Valence::Contravariant => {
                for k in 0..dim {
                    let x = &xi[(k, i)];
                    if !x.is_zero() {
                        jx[s] = k;
                        emit(&jx, x.clone());
                    }
                }
            }
        }
        jx[s] = i;
    }
}

/// The induced action of an endomorphism on a tensor.
pub fn act(xi: &Matrix, t: &Tensor) -> Tensor {
    let dim = t.dim();
    let mut out = Tensor::zeros(dim, t.valences().to_vec());
    for (ix, v) in t.nonzeros() {
        act_on_unit(xi, t.valences(), &ix, |jx, c| out.add_at(jx, &(&c * &v)));
    }
    out
}

/// Action matrix of `ξ` on the full tensor space of the given shape.
pub fn action_matrix(xi: &Matrix, valences: &[Valence]) -> SparseMatrix {
    let dim = xi.rows();
    let k = valences.len();
    let size = dim.pow(k as u32);
    let mut cols = Vec::with_capacity(size);
    for_each_index(dim, k, |ix| {
        let mut pairs = Vec::new();
        act_on_unit(xi, valences, ix, |jx, c| {
            pairs.push((jx.iter().fold(0, |a, &i| a * dim + i), c));
        });
        cols.push(SparseVec::from_pairs(pairs));
    });
    SparseMatrix::from_columns(size, cols)
}

/// Number of coordinates of `Λ²V* ⊗ V`.
pub fn torsion_space_dim(dim: usize) -> usize {
    dim * (dim - 1) / 2 * dim
}

/// Action matrix of `ξ` on `Λ²V* ⊗ V` in the coordinates
/// `pair(x, y)·dim + k` (`x < y`).
pub fn torsion_action_matrix(xi: &Matrix) -> SparseMatrix {
    let dim = xi.rows();
    let valences = [Valence::Covariant, Valence::Covariant, Valence::Contravariant];
    let size = torsion_space_dim(dim);
    let mut cols = Vec::with_capacity(size);
    for a in 0..dim {
        for b in a + 1..dim {
            for l in 0..dim {
                let mut pairs = Vec::new();
                let mut push = |jx: &[usize], c: Rational| {
                    let (x, y, k) = (jx[0], jx[1], jx[2]);
                    if x < y {
                        pairs.push((pair_index(x, y, dim) * dim + k, c));
                    }
                };
                act_on_unit(xi, &valences, &[a, b, l], &mut push);
                act_on_unit(xi, &valences, &[b, a, l], |jx, c| push(jx, -c));
                cols.push(SparseVec::from_pairs(pairs));
            }
        }
    }
    SparseMatrix::from_columns(size, cols)
}

/// An algebra together with its action on a tensor space.
#[derive(Clone, Debug)]
pub struct LieModule {
    pub valences: Vec<Valence>,
    pub algebra: MatrixAlgebra,
    pub actions: Vec<SparseMatrix>,
}

/// Build the induced action on the full tensor space of the given shape.
pub fn module_action(alg: &MatrixAlgebra, valences: &[Valence]) -> Result<LieModule, RepError> {
    if valences.len() > 5 {
        return Err(RepError::ShapeTooLarge(valences.len()));
    }
    Ok(LieModule {
        valences: valences.to_vec(),
        algebra: alg.clone(),
        actions: alg.basis.iter().map(|x| action_matrix(x, valences)).collect(),
    })
}

impl LieModule {
    pub fn dim(&self) -> usize {
        self.actions.first().map_or(0, |a| a.rows())
    }

    /// The Casimir `Σ ρ(ξ_i) ρ(ξⁱ)` for the trace-form dual basis.
    pub fn casimir(&self) -> Result<SparseMatrix, RepError> {
        casimir_from(&self.algebra, &self.actions, |x| action_matrix(x, &self.valences))
    }

    /// Whether `ρ` respects brackets: `[ρ(ξ_i), ρ(ξ_j)] = ρ([ξ_i, ξ_j])`.
    pub fn check_bracket(&self) -> bool {
        let d = self.actions.len();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.actions[i]
                    .compose(&self.actions[j])
                    .add(&self.actions[j].compose(&self.actions[i]).scale(&-Rational::one()));
                let br = self.algebra.basis[i].commutator(&self.algebra.basis[j]);
                if lhs != action_matrix(&br, &self.valences) {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn casimir_from(
    alg: &MatrixAlgebra,
    actions: &[SparseMatrix],
    build: impl Fn(&Matrix) -> SparseMatrix,
) -> Result<SparseMatrix, RepError> {
    let dual = alg.dual_basis()?;
    let mut acc: Option<SparseMatrix> = None;
    for (a, d) in actions.iter().zip(&dual) {
        let term = a.compose(&build(d));
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term),
        });
    }
    Ok(acc.expect("nonempty algebra"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eh_model::{defining_tensors, ModelSpace};
    use crate::rep_theory::{lie_algebra_basis, AlgebraKind};

    #[test]
    fn stabilizers_kill_defining_tensors() {
        let m = ModelSpace::standard(2).unwrap();
        let d = defining_tensors(&m);
        let g = lie_algebra_basis(AlgebraKind::SoStarPlusSp1, 2).unwrap();
        for xi in &g.basis {
            assert!(act(xi, &d.phi0).is_zero());
            assert!(act(xi, &m.omega_tensor()).is_zero());
        }
    }

    #[test]
    fn j1_rotates_metric_triple() {
        let m = ModelSpace::standard(2).unwrap();
        let g2 = Tensor::from_bilinear(&m.g(1));
        let g3 = Tensor::from_bilinear(&m.g(2));
        let out = act(m.j(0), &g2);
        let two = Rational::from_int(2);
        assert!(out == g3.scale(&two) || out == g3.scale(&-two));
    }

    #[test]
    fn casimir_commutes_on_torsion_space() {
        let m = ModelSpace::standard(2).unwrap();
        let alg = lie_algebra_basis(AlgebraKind::SoStar, 2).unwrap();
        let actions: Vec<_> = alg.basis.iter().map(torsion_action_matrix).collect();
        let c = casimir_from(&alg, &actions, torsion_action_matrix).unwrap();
        for a in &actions {
            assert_eq!(c.compose(a), a.compose(&c));
        }
        let _ = m;
    }

    #[test]
    fn bracket_on_small_module() {
        let alg = lie_algebra_basis(AlgebraKind::SoStarPlusSp1, 2).unwrap();
        let module = module_action(&alg, &[Valence::Covariant, Valence::Contravariant]).unwrap();
        assert!(module.check_bracket());
        let c = module.casimir().unwrap();
        for a in &module.actions {
            assert_eq!(c.compose(a), a.compose(&c));
        }
    }
}
