use crate::eh_model::ModelSpace;
use crate::linalg::Matrix;
use crate::scalar_expr::Rational;

type Quat = [Rational; 4];

fn q(a: i64, b: i64, c: i64, d: i64, den: i64) -> Quat {
    [Rational::new(a, den), Rational::new(b, den), Rational::new(c, den), Rational::new(d, den)]
}

fn qmul(x: &Quat, y: &Quat) -> Quat {
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

/// Real 4×4 matrix of `x ↦ x·r` in the basis `(1, i, j, k)`.
fn right_mult(r: &Quat) -> Matrix {
    let units = [q(1, 0, 0, 0, 1), q(0, 1, 0, 0, 1), q(0, 0, 1, 0, 1), q(0, 0, 0, 1, 1)];
    let mut m = Matrix::zeros(4, 4);
    for (col, u) in units.iter().enumerate() {
        let img = qmul(u, r);
        for (row, v) in img.into_iter().enumerate() {
            m[(row, col)] = v;
        }
    }
    m
}

/// `U × U*` for `U = ℍⁿ`, written through `ρ(u, ξ) = (u, ξ̄ᵗ)` as `ℍ²ⁿ` with
/// real coordinates `(u₁, …, u_n, w₁, …, w_n)`, each quaternion as
/// `(re, i, j, k)`.
///
/// The triple is right multiplication, `J₁ = R_i`, `J₂ = R_j`, `J₃ = J₁J₂`,
/// and `ω((u, w), (v, z)) = Re Σ_c (z̄_c u_c − w̄_c v_c)` is the real part of
/// the natural pairing `ξ(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CotangentModel {
    n: usize,
    triple: [Matrix; 3],
    omega: Matrix,
    darboux: Matrix,
}

/// Outcome of the exact checks on a [`CotangentModel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotangentCheck {
    pub omega_rank: usize,
    /// `J_a² = −1` and `J₁J₂ = J₃ = −J₂J₁`.
    pub quaternion_relations: bool,
    /// `ω(J_a X, J_a Y) = ω(X, Y)` for all three.
    pub hermitian: bool,
    /// The Darboux basis satisfies `ω(e_r, f_s) = δ_rs`, all other pairs 0.
    pub darboux_symplectic: bool,
    /// In the Darboux basis the triple is that of the standard model.
    pub darboux_quaternionic: bool,
}

impl CotangentCheck {
    pub fn all_hold(&self, n: usize) -> bool {
        self.omega_rank == 8 * n
            && self.quaternion_relations
            && self.hermitian
            && self.darboux_symplectic
            && self.darboux_quaternionic
    }
}

/// Build the linear cotangent model of quaternionic dimension `2n` on
/// `ℍⁿ ⊕ (ℍⁿ)*`.
pub fn cotangent_model(n: usize) -> CotangentModel {
    assert!(n >= 1, "cotangent model needs n ≥ 1");
    let dim = 8 * n;
    let lines = 2 * n;
    let block = |r: &Quat| {
        let rm = right_mult(r);
        let mut m = Matrix::zeros(dim, dim);
        for l in 0..lines {
            for a in 0..4 {
                for b in 0..4 {
                    m[(4 * l + a, 4 * l + b)] = rm[(a, b)].clone();
                }
            }
        }
        m
    };
    let j1 = block(&q(0, 1, 0, 0, 1));
    let j2 = block(&q(0, 0, 1, 0, 1));
    let j3 = j1.mul(&j2);

    // Re(z̄ u) is the Euclidean product of the real coordinates
    let half = 4 * n;
    let mut omega = Matrix::zeros(dim, dim);
    for r in 0..half {
        omega[(r, half + r)] = Rational::one();
        omega[(half + r, r)] = -Rational::one();
    }

    // Quaternionic lines spanned by b_c = (ε_c, −ε_c j/2) and
    // b'_c = (ε_c k, ε_c i/2); the real basis of each line is
    // e = b, e' = b·i, f = b·j, f' = −b·k.
    let model = ModelSpace::standard_any(lines);
    let mut darboux = Matrix::zeros(dim, dim);
    let gens: [(Quat, Quat); 2] = [(q(1, 0, 0, 0, 1), q(0, 0, -1, 0, 2)), (q(0, 0, 0, 1, 1), q(0, 1, 0, 0, 2))];
    let mults = [q(1, 0, 0, 0, 1), q(0, 1, 0, 0, 1), q(0, 0, 1, 0, 1), q(0, 0, 0, -1, 1)];
    for (g, (head, tail)) in gens.iter().enumerate() {
        for c in 0..n {
            let line = g * n + c;
            let targets = [model.e(line + 1), model.e(line + 1 + lines), model.f(line + 1), model.f(line + 1 + lines)];
            for (t, mlt) in targets.iter().zip(&mults) {
                let u = qmul(head, mlt);
                let w = qmul(tail, mlt);
                for a in 0..4 {
                    darboux[(4 * c + a, *t)] = u[a].clone();
                    darboux[(half + 4 * c + a, *t)] = w[a].clone();
                }
            }
        }
    }
    CotangentModel {
        n,
        triple: [j1, j2, j3],
        omega,
        darboux,
    }
}

impl CotangentModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        8 * self.n
    }

    pub fn triple(&self) -> &[Matrix; 3] {
        &self.triple
    }

    /// Gram matrix of the pairing form.
    pub fn omega(&self) -> &Matrix {
        &self.omega
    }

    /// Columns are the Darboux basis `e₁…e_{4n}, f₁…f_{4n}` in the real
    /// coordinates of `ℍⁿ ⊕ ℍⁿ`.
    pub fn darboux(&self) -> &Matrix {
        &self.darboux
    }

    /// The standard model that the Darboux basis identifies this space with.
    pub fn standard(&self) -> ModelSpace {
        ModelSpace::standard_any(2 * self.n)
    }

    pub fn check(&self) -> CotangentCheck {
        let id = Matrix::identity(self.dim());
        let [j1, j2, j3] = &self.triple;
        let quaternion_relations = self.triple.iter().all(|j| j.mul(j) == id.neg())
            && &j1.mul(j2) == j3
            && j2.mul(j1) == j3.neg();
        let hermitian = self
            .triple
            .iter()
            .all(|j| j.transpose().mul(&self.omega).mul(j) == self.omega);
        let model = self.standard();
        let p = &self.darboux;
        let darboux_symplectic = &p.transpose().mul(&self.omega).mul(p) == model.omega();
        let darboux_quaternionic = match p.inverse() {
            None => false,
            Some(pinv) => (0..3).all(|a| &pinv.mul(&self.triple[a]).mul(p) == model.j(a)),
        };
        CotangentCheck {
            omega_rank: self.omega.rank(),
            quaternion_relations,
            hermitian,
            darboux_symplectic,
            darboux_quaternionic,
        }
    }
}
