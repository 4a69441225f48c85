//! Reductive homogeneous spaces `K/L` with `𝔨 = 𝔪 ⊕ 𝔩` and `𝔪` identified
//! with the standard model: invariant connections through their Nomizu map,
//! their torsion and curvature at the origin, and classification.
//!
//! For `x, y ∈ 𝔪 = [EH]`:
//!
//! ```text
//! T_o(x, y) = α_∇(x)y − α_∇(y)x − [x, y]_𝔪
//! R_o(x, y) = [α_∇(x), α_∇(y)] − α_∇([x, y]_𝔪) − di([x, y]_𝔩)
//! ```
//!
//! `α_∇ = 0` is the canonical connection.

use alloc::vec;
use alloc::vec::Vec;

use crate::eh_model::{ModelError, ModelSpace};
use crate::linalg::Matrix;
use crate::rep_theory::{algebra_for_model, classify_torsion, Decomposition, MatrixAlgebra, RepError, StructureKind, TypeReport};
use crate::scalar_expr::Rational;
use crate::tensor_algebra::{SymKind, Tensor, Valence};

pub mod examples;
mod display;

pub use display::{DisplayDiff, DisplayMismatch, DisplayRegion, DisplayTerm, TorsionDisplay};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HomogeneousError {
    #[error("{what}: expected {expected}, got {got}")]
    Shape { what: &'static str, expected: usize, got: usize },
    #[error("antisymmetry fails: [k{i}, k{j}] ≠ −[k{j}, k{i}]")]
    Antisymmetry { i: usize, j: usize },
    #[error("Jacobi identity fails on the basis triple (k{i}, k{j}, k{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("the 𝔪 and 𝔩 bases together are not a basis of 𝔨")]
    NotComplement,
    #[error("𝔩 is not a subalgebra: [l{i}, l{j}] leaves 𝔩")]
    NotSubalgebra { i: usize, j: usize },
    #[error("not reductive: [l{l}, m{m}] leaves 𝔪")]
    NotReductive { l: usize, m: usize },
    #[error("the identification 𝔪 → [EH] is singular")]
    SingularIdentification,
    #[error("di(l{0}) is not in {1}")]
    IsotropyOutsideAlgebra(usize, &'static str),
    #[error("di is not a homomorphism: di([l{i}, l{j}]) ≠ [di(l{i}), di(l{j})]")]
    IsotropyNotHomomorphism { i: usize, j: usize },
    #[error("di(l{0}) differs from ad(l{0}) on 𝔪 transported to [EH]")]
    IsotropyMismatch(usize),
    #[error("α_∇(e{0}) is not in {1}")]
    NomizuOutsideAlgebra(usize, &'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Reductive homogeneous data over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousData {
    kind: StructureKind,
    n: usize,
    /// `brackets[i][j]` are the coordinates of `[kᵢ, kⱼ]` in the basis of 𝔨.
    brackets: Vec<Vec<Vec<Rational>>>,
    /// Basis of 𝔩, in coordinates of 𝔨.
    l_basis: Vec<Vec<Rational>>,
    /// Basis of 𝔪 (`4n` vectors), in coordinates of 𝔨.
    m_basis: Vec<Vec<Rational>>,
    /// Column `b` holds the model coordinates of the `b`-th 𝔪 basis vector.
    alpha_eh: Matrix,
    /// `α_∇(ε_a)` for each model basis vector; `None` for the canonical
    /// connection.
    nomizu: Option<Vec<Matrix>>,
    /// `di(l_i)` in model coordinates.
    di: Vec<Matrix>,
    // derived
    split: Matrix,
    alpha_inv: Matrix,
}

fn lin_comb(coeffs: &[Rational], vectors: &[Vec<Rational>], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = &*o + &(c * x);
            }
        }
    }
    out
}

impl HomogeneousData {
    /// Validate and assemble. All invariants are checked exactly.
    pub fn new(
        kind: StructureKind,
        brackets: Vec<Vec<Vec<Rational>>>,
        l_basis: Vec<Vec<Rational>>,
        m_basis: Vec<Vec<Rational>>,
        alpha_eh: Matrix,
        nomizu: Option<Vec<Matrix>>,
        di: Vec<Matrix>,
    ) -> Result<Self, HomogeneousError> {
        let dk = brackets.len();
        let dm = m_basis.len();
        if dm == 0 || dm % 4 != 0 {
            return Err(HomogeneousError::Shape {
                what: "dim 𝔪 (a positive multiple of 4)",
                expected: 4 * (dm / 4).max(1),
                got: dm,
            });
        }
        let n = dm / 4;
        let model = ModelSpace::standard(n)?;
        for row in &brackets {
            if row.len() != dk {
                return Err(HomogeneousError::Shape { what: "structure constant rows", expected: dk, got: row.len() });
            }
            for v in row {
                if v.len() != dk {
                    return Err(HomogeneousError::Shape { what: "bracket coordinates", expected: dk, got: v.len() });
                }
            }
        }
        if dm + l_basis.len() != dk {
            return Err(HomogeneousError::Shape { what: "dim 𝔪 + dim 𝔩", expected: dk, got: dm + l_basis.len() });
        }
        for v in l_basis.iter().chain(&m_basis) {
            if v.len() != dk {
                return Err(HomogeneousError::Shape { what: "basis vector length", expected: dk, got: v.len() });
            }
        }
        if alpha_eh.rows() != dm || alpha_eh.cols() != dm {
            return Err(HomogeneousError::Shape { what: "identification matrix size", expected: dm, got: alpha_eh.rows() });
        }
        if di.len() != l_basis.len() {
            return Err(HomogeneousError::Shape { what: "number of isotropy matrices", expected: l_basis.len(), got: di.len() });
        }
        for d in &di {
            if d.rows() != dm || d.cols() != dm {
                return Err(HomogeneousError::Shape { what: "isotropy matrix size", expected: dm, got: d.rows() });
            }
        }
        if let Some(nm) = &nomizu {
            if nm.len() != dm {
                return Err(HomogeneousError::Shape { what: "number of Nomizu matrices", expected: dm, got: nm.len() });
            }
            for a in nm {
                if a.rows() != dm || a.cols() != dm {
                    return Err(HomogeneousError::Shape { what: "Nomizu matrix size", expected: dm, got: a.rows() });
                }
            }
        }

        // Lie algebra axioms
        for i in 0..dk {
            for j in i..dk {
                let neg: Vec<Rational> = brackets[j][i].iter().map(|x| -x.clone()).collect();
                if brackets[i][j] != neg {
                    return Err(HomogeneousError::Antisymmetry { i, j });
                }
            }
        }
        let br = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); dk];
            for (i, ui) in u.iter().enumerate() {
                if ui.is_zero() {
                    continue;
                }
                for (j, vj) in v.iter().enumerate() {
                    if vj.is_zero() {
                        continue;
                    }
                    let k = ui * vj;
                    for (o, c) in out.iter_mut().zip(&brackets[i][j]) {
                        if !c.is_zero() {
                            *o = &*o + &(&k * c);
                        }
                    }
                }
            }
            out
        };
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); dk];
            v[i] = Rational::one();
            v
        };
        for i in 0..dk {
            for j in i + 1..dk {
                for k in j + 1..dk {
                    let (ei, ej, ek) = (unit(i), unit(j), unit(k));
                    let a = br(&ei, &br(&ej, &ek));
                    let b = br(&ej, &br(&ek, &ei));
                    let c = br(&ek, &br(&ei, &ej));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                        return Err(HomogeneousError::Jacobi { i, j, k });
                    }
                }
            }
        }

        // reductive split
        let mut cols: Vec<Vec<Rational>> = m_basis.clone();
        cols.extend(l_basis.iter().cloned());
        let basis = Matrix::from_fn(dk, dk, |r, c| cols[c][r].clone());
        let split = basis.inverse().ok_or(HomogeneousError::NotComplement)?;
        let coords = |v: &[Rational]| split.mul_vec(v);
        for (i, li) in l_basis.iter().enumerate() {
            for (j, lj) in l_basis.iter().enumerate().skip(i + 1) {
                if coords(&br(li, lj))[..dm].iter().any(|x| !x.is_zero()) {
                    return Err(HomogeneousError::NotSubalgebra { i, j });
                }
            }
            for (m, mv) in m_basis.iter().enumerate() {
                if coords(&br(li, mv))[dm..].iter().any(|x| !x.is_zero()) {
                    return Err(HomogeneousError::NotReductive { l: i, m });
                }
            }
        }
        let alpha_inv = alpha_eh.inverse().ok_or(HomogeneousError::SingularIdentification)?;

        // isotropy
        let alg = target_algebra(&model, kind);
        let name = kind_algebra_name(kind);
        for (i, d) in di.iter().enumerate() {
            if !alg.contains(d) {
                return Err(HomogeneousError::IsotropyOutsideAlgebra(i, name));
            }
            // ad(l_i) on 𝔪 in 𝔪-coordinates, transported by α
            let ad = Matrix::from_fn(dm, dm, |r, c| coords(&br(&l_basis[i], &m_basis[c]))[r].clone());
            if &alpha_eh.mul(&ad).mul(&alpha_inv) != d {
                return Err(HomogeneousError::IsotropyMismatch(i));
            }
        }
        for i in 0..di.len() {
            for j in i + 1..di.len() {
                let lc = coords(&br(&l_basis[i], &l_basis[j]));
                let mut image = Matrix::zeros(dm, dm);
                for (c, d) in lc[dm..].iter().zip(&di) {
                    if !c.is_zero() {
                        image = image.add(&d.scale(c));
                    }
                }
                if image != di[i].commutator(&di[j]) {
                    return Err(HomogeneousError::IsotropyNotHomomorphism { i, j });
                }
            }
        }
        if let Some(nm) = &nomizu {
            for (a, m) in nm.iter().enumerate() {
                if !alg.contains(m) {
                    return Err(HomogeneousError::NomizuOutsideAlgebra(a, name));
                }
            }
        }
        Ok(HomogeneousData {
            kind,
            n,
            brackets,
            l_basis,
            m_basis,
            alpha_eh,
            nomizu,
            di,
            split,
            alpha_inv,
        })
    }

    /// Data given by matrices: `𝔨 = span(m_mats ∪ l_mats)` with the
    /// commutator bracket, `𝔪` identified with the model through the
    /// coordinates of `m_mats` (α = identity), `di` read off from `ad`.
    pub fn from_matrices(
        kind: StructureKind,
        m_mats: &[Matrix],
        l_mats: &[Matrix],
        nomizu: Option<Vec<Matrix>>,
    ) -> Result<Self, HomogeneousError> {
        let all: Vec<Matrix> = m_mats.iter().chain(l_mats).cloned().collect();
        let dk = all.len();
        let entries = all.first().map_or(0, |m| m.rows() * m.cols());
        let a = Matrix::from_fn(entries, dk, |r, c| all[c].data()[r].clone());
        if a.rank() != dk {
            return Err(HomogeneousError::NotComplement);
        }
        let coords = |x: &Matrix| a.solve(x.data());
        let mut brackets = vec![vec![Vec::new(); dk]; dk];
        for i in 0..dk {
            for j in 0..dk {
                brackets[i][j] = coords(&all[i].commutator(&all[j])).ok_or(HomogeneousError::NotComplement)?;
            }
        }
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); dk];
            v[i] = Rational::one();
            v
        };
        let dm = m_mats.len();
        let m_basis: Vec<_> = (0..dm).map(unit).collect();
        let l_basis: Vec<_> = (dm..dk).map(unit).collect();
        let di = (0..l_mats.len())
            .map(|i| Matrix::from_fn(dm, dm, |r, c| brackets[dm + i][c][r].clone()))
            .collect();
        Self::new(kind, brackets, l_basis, m_basis, Matrix::identity(dm), nomizu, di)
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_k(&self) -> usize {
        self.brackets.len()
    }

    pub fn brackets(&self) -> &[Vec<Vec<Rational>>] {
        &self.brackets
    }

    pub fn l_basis(&self) -> &[Vec<Rational>] {
        &self.l_basis
    }

    pub fn m_basis(&self) -> &[Vec<Rational>] {
        &self.m_basis
    }

    pub fn alpha_eh(&self) -> &Matrix {
        &self.alpha_eh
    }

    pub fn nomizu(&self) -> Option<&[Matrix]> {
        self.nomizu.as_deref()
    }

    pub fn di(&self) -> &[Matrix] {
        &self.di
    }

    /// Same data with another Nomizu map (validated).
    pub fn with_nomizu(&self, nomizu: Option<Vec<Matrix>>) -> Result<Self, HomogeneousError> {
        Self::new(
            self.kind,
            self.brackets.clone(),
            self.l_basis.clone(),
            self.m_basis.clone(),
            self.alpha_eh.clone(),
            nomizu,
            self.di.clone(),
        )
    }

    fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let dk = self.dim_k();
        let mut out = vec![Rational::zero(); dk];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let k = ui * vj;
                for (o, c) in out.iter_mut().zip(&self.brackets[i][j]) {
                    if !c.is_zero() {
                        *o = &*o + &(&k * c);
                    }
                }
            }
        }
        out
    }

    /// The 𝔨-vector of the model basis vector `ε_a`.
    fn lift(&self, a: usize) -> Vec<Rational> {
        let dm = self.m_basis.len();
        let col: Vec<Rational> = (0..dm).map(|b| self.alpha_inv[(b, a)].clone()).collect();
        lin_comb(&col, &self.m_basis, self.dim_k())
    }

    /// `[ε_a, ε_b]` split into model coordinates of the 𝔪-part and 𝔩-basis
    /// coordinates of the 𝔩-part.
    fn split_bracket(&self, a: usize, b: usize) -> (Vec<Rational>, Vec<Rational>) {
        let dm = self.m_basis.len();
        let c = self.split.mul_vec(&self.bracket(&self.lift(a), &self.lift(b)));
        (self.alpha_eh.mul_vec(&c[..dm]), c[dm..].to_vec())
    }

    fn nomizu_at(&self, x: &[Rational]) -> Option<Matrix> {
        let nm = self.nomizu.as_ref()?;
        let dm = self.m_basis.len();
        let mut out = Matrix::zeros(dm, dm);
        for (c, m) in x.iter().zip(nm) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        Some(out)
    }
}

fn target_algebra(model: &ModelSpace, kind: StructureKind) -> MatrixAlgebra {
    algebra_for_model(model, kind.algebra_kind())
}

fn kind_algebra_name(kind: StructureKind) -> &'static str {
    match kind {
        StructureKind::HsH => "so*(2n)",
        StructureKind::QsH => "so*(2n)⊕sp(1)",
    }
}

/// Torsion (slots `X, Y, out`) and curvature (slots `X, Y, Z, out`, i.e.
/// `R(X, Y)Z`) at the origin, in model coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct NomizuTensors {
    pub torsion: Tensor,
    pub curvature: Tensor,
}

pub fn nomizu_torsion_curvature(hd: &HomogeneousData) -> NomizuTensors {
    let dm = hd.m_basis.len();
    let mut torsion = Tensor::zeros(dm, vec![Valence::Covariant, Valence::Covariant, Valence::Contravariant]);
    let mut curvature = Tensor::zeros(
        dm,
        vec![Valence::Covariant, Valence::Covariant, Valence::Covariant, Valence::Contravariant],
    );
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); dm];
        v[i] = Rational::one();
        v
    };
    for a in 0..dm {
        for b in a + 1..dm {
            let (bm, bl) = hd.split_bracket(a, b);
            let na = hd.nomizu_at(&unit(a));
            let nb = hd.nomizu_at(&unit(b));
            // torsion
            for k in 0..dm {
                let mut v = -bm[k].clone();
                if let (Some(na), Some(nb)) = (&na, &nb) {
                    v = &(&v + &na[(k, b)]) - &nb[(k, a)];
                }
                if !v.is_zero() {
                    torsion.set(&[a, b, k], v.clone());
                    torsion.set(&[b, a, k], -v);
                }
            }
            // curvature
            let mut r = Matrix::zeros(dm, dm);
            for (c, d) in bl.iter().zip(&hd.di) {
                if !c.is_zero() {
                    r = r.sub(&d.scale(c));
                }
            }
            if let (Some(na), Some(nb)) = (&na, &nb) {
                r = r.add(&na.commutator(nb));
                if let Some(nm) = hd.nomizu_at(&bm) {
                    r = r.sub(&nm);
                }
            }
            for z in 0..dm {
                for k in 0..dm {
                    let v = &r[(k, z)];
                    if !v.is_zero() {
                        curvature.set(&[a, b, z, k], v.clone());
                        curvature.set(&[b, a, z, k], -v.clone());
                    }
                }
            }
        }
    }
    torsion.mark(&[0, 1], SymKind::Alternating);
    curvature.mark(&[0, 1], SymKind::Alternating);
    NomizuTensors { torsion, curvature }
}

/// Classify the torsion of the invariant connection at the origin.
pub fn classify_homogeneous(hd: &HomogeneousData, d: &Decomposition) -> Result<TypeReport, HomogeneousError> {
    if d.n() != hd.n() {
        return Err(HomogeneousError::Shape { what: "classifier dimension n", expected: hd.n(), got: d.n() });
    }
    let t = nomizu_torsion_curvature(hd).torsion;
    Ok(classify_torsion(d, &t)?)
}

#[cfg(test)]
mod tests;
