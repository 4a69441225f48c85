use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::algebra::MatrixAlgebra;
use super::module::SparseMatrix;
use super::quotient::{IntrinsicQuotient, StructureKind};
use super::RepError;
use crate::eh_model::ModelSpace;
use crate::linalg::{rational_roots, Matrix, SparseVec};
use crate::scalar_expr::Rational;

/// Relative zero threshold used for inexact (floating-point) torsion.
pub const ZERO_THRESHOLD: f64 = 1e-9;

/// sp(1)-type of an isotypic component: `H` (spin ½) or `S³H` (spin 3/2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinLevel {
    H,
    S3H,
}

impl SpinLevel {
    /// Real dimension contributed by the sp(1) factor of `[A ⊗ level]`.
    pub fn real_factor(&self) -> usize {
        match self {
            SpinLevel::H => 2,
            SpinLevel::S3H => 4,
        }
    }
}

/// The SO*(2n)-factor of an isotypic component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Irrep {
    E,
    Lambda3E,
    K,
    S3E0,
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Irrep::E => "E",
            Irrep::Lambda3E => "Λ³E",
            Irrep::K => "K",
            Irrep::S3E0 => "S³₀E",
        })
    }
}

/// Whether a component lies in the image of the 3-form projector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    ThreeForm,
    Complement,
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Complex dimension of the SO*(2n)-factor.
pub fn irrep_complex_dim(irrep: Irrep, n: usize) -> usize {
    let m = 2 * n;
    match irrep {
        Irrep::E => m,
        Irrep::Lambda3E => binom(m, 3),
        // E ⊗ Λ²E = Λ³E ⊕ K ⊕ E
        Irrep::K => m * binom(m, 2) - binom(m, 3) - m,
        Irrep::S3E0 => binom(m + 2, 3) - m,
    }
}

/// so*(2n)-Casimir eigenvalue divided by its value on `E`.
fn casimir_ratio(irrep: Irrep, n: usize) -> Rational {
    let n = n as i64;
    match irrep {
        Irrep::E => Rational::one(),
        Irrep::Lambda3E => Rational::new(6 * n - 9, 2 * n - 1),
        Irrep::K => Rational::new(6 * n - 3, 2 * n - 1),
        Irrep::S3E0 => Rational::new(6 * n + 3, 2 * n - 1),
    }
}

/// The type modules: label, sp(1) level, SO*(2n)-factor and part.
const LABELS: [(&str, SpinLevel, Irrep, Part); 7] = [
    ("X1", SpinLevel::S3H, Irrep::K, Part::Complement),
    ("X2", SpinLevel::S3H, Irrep::Lambda3E, Part::ThreeForm),
    ("X3", SpinLevel::H, Irrep::K, Part::ThreeForm),
    ("X4", SpinLevel::H, Irrep::E, Part::ThreeForm),
    ("X5", SpinLevel::H, Irrep::S3E0, Part::Complement),
    ("X6", SpinLevel::S3H, Irrep::E, Part::Complement),
    ("X7", SpinLevel::H, Irrep::E, Part::Complement),
];

fn labels_for(kind: StructureKind) -> &'static [(&'static str, SpinLevel, Irrep, Part)] {
    match kind {
        StructureKind::HsH => &LABELS,
        StructureKind::QsH => &LABELS[..5],
    }
}

/// One labelled joint eigenspace of the two Casimirs and the 3-form
/// projector on the quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotypicComponent {
    /// `X1` … `X7`, or labels joined by `+` when the discriminators
    /// cannot separate them.
    pub label: String,
    pub level: SpinLevel,
    /// Candidate SO*(2n)-factors with the observed Casimir eigenvalue.
    pub irreps: Vec<Irrep>,
    pub part: Part,
    pub sp1_eigenvalue: Rational,
    pub so_star_eigenvalue: Rational,
    /// Real dimension (trace of the projector).
    pub dim: usize,
    /// Complex dimension of the SO*(2n)-factor per the closed-form table.
    pub complex_dim: usize,
    /// Projector in quotient coordinates (acting on columns).
    pub projector: Matrix,
}

impl IsotypicComponent {
    pub fn is_merged(&self) -> bool {
        self.label.contains('+')
    }

    /// Component of a quotient vector.
    pub fn apply(&self, q: &SparseVec) -> Vec<Rational> {
        let p = &self.projector;
        let mut out = vec![Rational::zero(); p.rows()];
        for (c, x) in q.entries() {
            for (r, o) in out.iter_mut().enumerate() {
                let y = &p[(r, *c)];
                if !y.is_zero() {
                    *o += y * x;
                }
            }
        }
        out
    }
}

/// The quotient with its labelled isotypic decomposition.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub quotient: IntrinsicQuotient,
    pub components: Vec<IsotypicComponent>,
    /// Lee functional in quotient coordinates.
    pub lee: Matrix,
    /// so*(2n)-Casimir on `V`, the calibration constant for `E`.
    pub casimir_on_e: Rational,
    /// sp(1)-Casimir on `V`, the calibration constant for `H`.
    pub casimir_on_h: Rational,
}

/// Deterministic pseudo-random integer vector.
fn seed_vector(dim: usize, seed: u64) -> Vec<Rational> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (0..dim)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Rational::from_int(((state >> 33) % 19) as i64 - 9)
        })
        .collect()
}

/// Minimal polynomial of `v` under `c` (monic, low degree first).
fn krylov_polynomial(c: &SparseMatrix, v: Vec<Rational>) -> Vec<Rational> {
    let dim = v.len();
    let mut basis: Vec<Vec<Rational>> = vec![v];
    loop {
        let next = c.apply_dense(basis.last().unwrap());
        let k = basis.len();
        let m = Matrix::from_fn(dim, k, |r, j| basis[j][r].clone());
        if let Some(x) = m.solve(&next) {
            // C^k v = Σ x_j C^j v
            let mut poly: Vec<Rational> = x.into_iter().map(|a| -a).collect();
            poly.push(Rational::one());
            return poly;
        }
        basis.push(next);
    }
}

fn poly_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    for r in roots {
        let mut q = vec![Rational::zero(); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            q[i + 1] += a;
            q[i] -= a * r;
        }
        p = q;
    }
    p
}

fn combine_powers(powers: &[Matrix], coeffs: &[Rational]) -> Matrix {
    let dim = powers[0].rows();
    let mut acc = Matrix::zeros(dim, dim);
    for (p, c) in powers.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&p.scale(c));
        }
    }
    acc
}

/// Eigenvalues and spectral projectors of a diagonalizable operator with
/// rational spectrum.
fn spectral_projectors(
    c: &SparseMatrix,
    name: &'static str,
) -> Result<Vec<(Rational, Matrix)>, RepError> {
    let dim = c.rows();
    let mut roots: Vec<Rational> = Vec::new();
    let dense = c.to_dense();
    let mut powers = vec![Matrix::identity(dim)];
    for attempt in 0..3u64 {
        let poly = krylov_polynomial(c, seed_vector(dim, attempt + 1));
        for r in rational_roots(&poly)? {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let minpoly = poly_from_roots(&roots);
        while powers.len() < minpoly.len() {
            let next = powers.last().unwrap().mul(&dense);
            powers.push(next);
        }
        if !combine_powers(&powers, &minpoly).is_zero() {
            continue;
        }
        roots.sort();
        let mut out = Vec::with_capacity(roots.len());
        for (i, l) in roots.iter().enumerate() {
            let others: Vec<Rational> =
                roots.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
            let denom: Rational = others.iter().map(|m| l - m).product();
            let coeffs: Vec<Rational> = poly_from_roots(&others)
                .into_iter()
                .map(|a| a / &denom)
                .collect();
            out.push((l.clone(), combine_powers(&powers, &coeffs)));
        }
        return Ok(out);
    }
    Err(RepError::MinimalPolynomial(name))
}

/// Casimir of an algebra on its defining representation.
fn defining_casimir(alg: &MatrixAlgebra) -> Result<Matrix, RepError> {
    let dual = alg.dual_basis()?;
    let dim = alg.basis[0].rows();
    let mut acc = Matrix::zeros(dim, dim);
    for (a, d) in alg.basis.iter().zip(&dual) {
        acc = acc.add(&a.mul(d));
    }
    Ok(acc)
}

fn scalar_of(m: &Matrix) -> Option<Rational> {
    let s = m[(0, 0)].clone();
    (*m == Matrix::identity(m.rows()).scale(&s)).then_some(s)
}

fn trace_of_product(a: &Matrix, b: &Matrix) -> Rational {
    let n = a.rows();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            let x = &a[(i, j)];
            if !x.is_zero() {
                let y = &b[(j, i)];
                if !y.is_zero() {
                    acc += x * y;
                }
            }
        }
    }
    acc
}

fn rational_to_usize(r: &Rational) -> Option<usize> {
    if !r.is_integer() || r.signum() < 0 {
        return None;
    }
    r.as_small().map(|(n, _)| n as usize)
}

/// Labelled isotypic decomposition for the standard model.
pub fn isotypic_decomposition(kind: StructureKind, n: usize) -> Result<Decomposition, RepError> {
    Decomposition::new(&ModelSpace::standard(n)?, kind)
}

impl Decomposition {
    pub fn new(model: &ModelSpace, kind: StructureKind) -> Result<Self, RepError> {
        let quotient = IntrinsicQuotient::new(model, kind)?;
        Self::from_quotient(quotient)
    }

    pub fn from_quotient(quotient: IntrinsicQuotient) -> Result<Self, RepError> {
        let n = quotient.n();
        let kind = quotient.kind();
        let casimir_on_e = scalar_of(&defining_casimir(quotient.so_star())?)
            .ok_or(RepError::Labeling("so*(2n)-Casimir is not scalar on V".into()))?;
        let casimir_on_h = scalar_of(&defining_casimir(quotient.sp1())?)
            .ok_or(RepError::Labeling("sp(1)-Casimir is not scalar on V".into()))?;
        // spin 3/2 versus spin 1/2: j(j+1) ratio 5
        let s3h_value = &casimir_on_h * &Rational::from_int(5);

        let sp1_proj = spectral_projectors(&quotient.casimir_sp1()?, "sp(1)")?;
        let so_proj = spectral_projectors(&quotient.casimir_so_star()?, "so*(2n)")?;
        let pi = quotient.three_form_projector().to_dense();

        let mut components = Vec::new();
        for (lsp, psp) in &sp1_proj {
            let level = if *lsp == casimir_on_h {
                SpinLevel::H
            } else if *lsp == s3h_value {
                SpinLevel::S3H
            } else {
                return Err(RepError::Labeling(format!("unexpected sp(1)-Casimir eigenvalue {lsp}")));
            };
            let with_pi = psp.mul(&pi);
            let with_co = psp.sub(&with_pi);
            for (part, a) in [(Part::ThreeForm, &with_pi), (Part::Complement, &with_co)] {
                for (lso, pso) in &so_proj {
                    let tr = trace_of_product(a, pso);
                    if tr.is_zero() {
                        continue;
                    }
                    let rdim = rational_to_usize(&tr)
                        .ok_or_else(|| RepError::Labeling(format!("non-integral trace {tr}")))?;
                    let ratio = lso / &casimir_on_e;
                    let irreps: Vec<Irrep> = [Irrep::E, Irrep::Lambda3E, Irrep::K, Irrep::S3E0]
                        .into_iter()
                        .filter(|i| casimir_ratio(*i, n) == ratio)
                        .collect();
                    let matches: Vec<_> = labels_for(kind)
                        .iter()
                        .filter(|(_, l, i, p)| *l == level && *p == part && irreps.contains(i))
                        .collect();
                    if matches.is_empty() {
                        return Err(RepError::Labeling(format!(
                            "no type module with level {level:?}, part {part:?}, Casimir ratio {ratio}"
                        )));
                    }
                    let expected: usize = matches
                        .iter()
                        .map(|(_, l, i, _)| irrep_complex_dim(*i, n) * l.real_factor())
                        .sum();
                    if expected != rdim {
                        return Err(RepError::Labeling(format!(
                            "{} has dimension {rdim}, expected {expected}",
                            matches[0].0
                        )));
                    }
                    let label = matches.iter().map(|m| m.0).collect::<Vec<_>>().join("+");
                    components.push(IsotypicComponent {
                        label,
                        level,
                        irreps: matches.iter().map(|m| m.2).collect(),
                        part,
                        sp1_eigenvalue: lsp.clone(),
                        so_star_eigenvalue: lso.clone(),
                        dim: rdim,
                        complex_dim: matches.iter().map(|m| irrep_complex_dim(m.2, n)).sum(),
                        projector: a.mul(pso),
                    });
                }
            }
        }
        components.sort_by(|a, b| label_key(&a.label).cmp(&label_key(&b.label)));
        let lee = quotient.lee_matrix();
        Ok(Decomposition {
            quotient,
            components,
            lee,
            casimir_on_e,
            casimir_on_h,
        })
    }

    pub fn kind(&self) -> StructureKind {
        self.quotient.kind()
    }

    pub fn n(&self) -> usize {
        self.quotient.n()
    }

    pub fn component(&self, label: &str) -> Option<&IsotypicComponent> {
        self.components.iter().find(|c| c.label == label)
    }

    /// Whether the row space of the Lee functional equals that of the X4
    /// projector, i.e. X4 is exactly the part of the torsion seen by the
    /// Lee functional.
    pub fn lee_matches_x4(&self) -> bool {
        let Some(x4) = self.component("X4") else {
            return false;
        };
        self.lee.mul(&x4.projector) == self.lee && self.lee.rank() == x4.dim
    }

    /// Exact projector-algebra checks.
    pub fn check_projectors(&self, commute_with: &[SparseMatrix]) -> ProjectorCheck {
        let dim = self.quotient.dim();
        let ps: Vec<&Matrix> = self.components.iter().map(|c| &c.projector).collect();
        let mut idempotent = true;
        let mut orthogonal = true;
        for (i, p) in ps.iter().enumerate() {
            for (j, q) in ps.iter().enumerate().skip(i) {
                let prod = p.mul(q);
                if i == j {
                    idempotent &= prod == **p;
                } else {
                    orthogonal &= prod.is_zero();
                }
            }
        }
        let mut sum = Matrix::zeros(dim, dim);
        for p in &ps {
            sum = sum.add(p);
        }
        let complete = sum == Matrix::identity(dim);
        let commuting = commute_with.iter().all(|rho| {
            ps.iter().all(|p| rho.mul_dense_right(p) == rho.mul_dense_left(p))
        });
        ProjectorCheck {
            idempotent,
            orthogonal,
            complete,
            commuting,
        }
    }
}

fn label_key(label: &str) -> Vec<u32> {
    label
        .split('+')
        .filter_map(|l| l.trim_start_matches('X').parse().ok())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjectorCheck {
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complete: bool,
    pub commuting: bool,
}

impl ProjectorCheck {
    pub fn all(&self) -> bool {
        self.idempotent && self.orthogonal && self.complete && self.commuting
    }
}

/// A subset of basis indices whose iterated brackets span the algebra.
pub fn generating_subset(alg: &MatrixAlgebra) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut span: Vec<Matrix> = Vec::new();
    let flat = |m: &Matrix| SparseVec::from_dense(m.data());
    let mut ech = crate::linalg::Echelon::new(alg.basis[0].data().len());
    for (i, b) in alg.basis.iter().enumerate() {
        if ech.contains(&flat(b)) {
            continue;
        }
        chosen.push(i);
        // close under brackets
        let mut frontier = vec![b.clone()];
        ech.insert(&flat(b));
        span.push(b.clone());
        while let Some(x) = frontier.pop() {
            let current = span.clone();
            for y in &current {
                let br = x.commutator(y);
                if ech.insert(&flat(&br)) {
                    span.push(br.clone());
                    frontier.push(br);
                }
            }
        }
        if ech.rank() == alg.dim() {
            break;
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_dims() {
        assert_eq!(irrep_complex_dim(Irrep::K, 2), 16);
        assert_eq!(irrep_complex_dim(Irrep::S3E0, 2), 16);
        assert_eq!(irrep_complex_dim(Irrep::Lambda3E, 3), 20);
        assert_eq!(irrep_complex_dim(Irrep::K, 3), 64);
        assert_eq!(irrep_complex_dim(Irrep::S3E0, 3), 50);
    }

    #[test]
    fn min_poly_of_diagonal() {
        let m = Matrix::from_ints(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 2]);
        let s = SparseMatrix::from_dense(&m);
        let p = spectral_projectors(&s, "test").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].0, Rational::from_int(2));
        assert_eq!(p[0].1.trace(), Rational::from_int(2));
    }

    #[test]
    fn hsh_n2_decomposition() {
        let d = isotypic_decomposition(StructureKind::HsH, 2).unwrap();
        let dims: Vec<(String, usize)> =
            d.components.iter().map(|c| (c.label.clone(), c.dim)).collect();
        let expect = [("X1", 64), ("X2", 16), ("X3", 32), ("X4", 8), ("X5", 32), ("X6", 16), ("X7", 8)];
        assert_eq!(dims.len(), 7);
        for ((l, k), (el, ek)) in dims.iter().zip(expect) {
            assert_eq!((l.as_str(), *k), (el, ek));
        }
        assert!(d.lee_matches_x4());
        let acts: Vec<SparseMatrix> = d.quotient.actions().cloned().collect();
        assert!(d.check_projectors(&acts).all());
    }

    #[test]
    fn qsh_n2_decomposition() {
        let d = isotypic_decomposition(StructureKind::QsH, 2).unwrap();
        let labels: Vec<&str> = d.components.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["X1", "X2", "X3", "X4", "X5"]);
        let total: usize = d.components.iter().map(|c| c.dim).sum();
        assert_eq!(total, 152);
        assert!(d.lee_matches_x4());
    }

    #[test]
    fn generators_of_so_star() {
        let d = isotypic_decomposition(StructureKind::QsH, 2).unwrap();
        let g = generating_subset(d.quotient.so_star());
        assert!(!g.is_empty() && g.len() < d.quotient.so_star().dim());
    }
}
