use alloc::vec;
use alloc::vec::Vec;

use super::{CoFrame, FrameError, FrameKind};
use crate::linalg::Matrix;
use crate::scalar_expr::{Expr, Rational};

/// The input coframe on `copies` disjoint coordinate blocks: row
/// `j·dim + b` is `ϑ^b` on copy `j`, with `x_i ↦ x_{i + j·dim}`.
fn copies(cf: &CoFrame, copies: usize) -> Vec<Vec<Expr>> {
    let dim = cf.dim();
    let total = copies * dim;
    let mut rows = Vec::with_capacity(total);
    for j in 0..copies {
        let subs: Vec<Expr> = (1..=dim).map(|i| Expr::var(i + j * dim)).collect();
        for form in cf.forms() {
            let mut row = vec![Expr::zero(); total];
            for (k, c) in form.iter().enumerate() {
                row[j * dim + k] = c.substitute(&subs);
            }
            rows.push(row);
        }
    }
    rows
}

/// Coframe dual to the frame `U_a = Σ_b B_{ab} v_b`, where `v` is the frame
/// dual to `theta`: `Θ = (Bᵀ)⁻¹ θ`.
fn recombine(b: &Matrix, theta: &[Vec<Expr>]) -> Vec<Vec<Expr>> {
    let c = b.transpose().inverse().expect("recombination matrix is invertible");
    let dim = theta.len();
    (0..dim)
        .map(|a| {
            (0..dim)
                .map(|k| {
                    let terms: Vec<Expr> = (0..dim)
                        .filter(|&bb| !c[(a, bb)].is_zero() && !theta[bb][k].is_zero_const())
                        .map(|bb| Expr::constant(c[(a, bb)].clone()) * theta[bb][k].clone())
                        .collect();
                    Expr::sum(terms).simplify()
                })
                .collect()
        })
        .collect()
}

fn check_input(cf: &CoFrame, allowed: &[FrameKind]) -> Result<usize, FrameError> {
    if !allowed.contains(&cf.kind()) {
        return Err(FrameError::WrongKind {
            expected: allowed[0],
            got: cf.kind(),
        });
    }
    Ok(cf.dim() / 2)
}

/// The skew-Hermitian coframe on `M × M × M × M` built from a symplectic
/// coframe on `M²ᵐ`. With `e_{ij}, f_{ij}` the input frame on copy `j`, the
/// output frame is
///
/// ```text
/// e:  e_{i1}+f_{i2},  e_{i3}+f_{i4},  e_{i3}−f_{i4},  −e_{i1}+f_{i2}
/// f:  f_{i1}−e_{i2},  f_{i3}−e_{i4},  f_{i3}+e_{i4},  −f_{i1}−e_{i2}
/// ```
///
/// (each group running over `i = 1…m`). The induced scalar 2-form is
/// `Σⱼ ½ωⱼ`.
pub fn quaternionify_alpha(cf: &CoFrame) -> Result<CoFrame, FrameError> {
    let m = check_input(cf, &[FrameKind::Symplectic, FrameKind::Unitary])?;
    let dim = cf.dim();
    let total = 4 * dim;
    // index of e_i / f_i on copy j in the block-diagonal frame
    let e = |i: usize, j: usize| j * dim + i;
    let f = |i: usize, j: usize| j * dim + m + i;
    let one = Rational::one();
    let neg = -Rational::one();
    let mut b = Matrix::zeros(total, total);
    let groups: [[(bool, usize, &Rational); 2]; 8] = [
        [(true, 0, &one), (false, 1, &one)],
        [(true, 2, &one), (false, 3, &one)],
        [(true, 2, &one), (false, 3, &neg)],
        [(true, 0, &neg), (false, 1, &one)],
        [(false, 0, &one), (true, 1, &neg)],
        [(false, 2, &one), (true, 3, &neg)],
        [(false, 2, &one), (true, 3, &one)],
        [(false, 0, &neg), (true, 1, &neg)],
    ];
    for (g, terms) in groups.iter().enumerate() {
        for i in 0..m {
            for &(is_e, copy, coeff) in terms {
                let col = if is_e { e(i, copy) } else { f(i, copy) };
                b[(g * m + i, col)] = coeff.clone();
            }
        }
    }
    CoFrame::new(FrameKind::SkewHermitian, recombine(&b, &copies(cf, 4)))
}

/// The skew-Hermitian coframe on `M × M` built from a unitary coframe on
/// `M²ᵐ`: the frame `(e_{i1}, e_{i2}, f_{i1}, f_{i2})`. The induced scalar
/// 2-form is `ω₁ + ω₂`.
pub fn quaternionify_beta(cf: &CoFrame) -> Result<CoFrame, FrameError> {
    let m = check_input(cf, &[FrameKind::Unitary])?;
    let dim = cf.dim();
    let total = 2 * dim;
    let mut b = Matrix::zeros(total, total);
    for i in 0..m {
        b[(i, i)] = Rational::one();
        b[(m + i, dim + i)] = Rational::one();
        b[(2 * m + i, m + i)] = Rational::one();
        b[(3 * m + i, dim + m + i)] = Rational::one();
    }
    CoFrame::new(FrameKind::SkewHermitian, recombine(&b, &copies(cf, 2)))
}
