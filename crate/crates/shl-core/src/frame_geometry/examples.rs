//! The explicit coframes used throughout the tests and the example registry.
//! Every frame is listed in the order `e₁…e_{2n}, f₁…f_{2n}` (or `e, f` for
//! the inputs of the quaternionification constructions).

use alloc::vec;
use alloc::vec::Vec;

use super::{quaternionify_alpha, quaternionify_beta, CoFrame, FrameKind};
use crate::scalar_expr::Expr;

fn x(i: usize) -> Expr {
    Expr::var(i)
}

fn c(k: i64) -> Expr {
    Expr::int(k)
}

/// `dx_i + Σ coeff·dx_j` as a coefficient row.
fn row(dim: usize, i: usize, extra: &[(usize, Expr)]) -> Vec<Expr> {
    let mut r = vec![Expr::zero(); dim];
    r[i - 1] = Expr::one();
    for (j, e) in extra {
        r[j - 1] = r[j - 1].clone() + e.clone();
    }
    r
}

fn frame(kind: FrameKind, rows: Vec<Vec<Expr>>) -> CoFrame {
    CoFrame::new(kind, rows).expect("example coframe is well formed")
}

/// Coordinate coframe with some rows replaced.
fn perturbed(kind: FrameKind, dim: usize, changes: Vec<(usize, Vec<(usize, Expr)>)>) -> CoFrame {
    let mut rows: Vec<Vec<Expr>> = (1..=dim).map(|i| row(dim, i, &[])).collect();
    for (i, extra) in changes {
        rows[i - 1] = row(dim, i, &extra);
    }
    frame(kind, rows)
}

/// ℝ¹², first example: `ϑ⁶` and `ϑ¹²` twisted. Type `X12`.
pub fn r12_x12() -> CoFrame {
    perturbed(
        FrameKind::SkewHermitian,
        12,
        vec![
            (6, vec![(2, x(4)), (5, -x(1)), (8, x(10)), (11, -x(7))]),
            (12, vec![(2, -x(10)), (5, -x(7)), (8, x(4)), (11, x(1))]),
        ],
    )
}

/// ℝ⁸ with `ϑ¹ = dx₁ + x₂dx₃`. Type `X123567`.
pub fn r8_x123567() -> CoFrame {
    perturbed(FrameKind::SkewHermitian, 8, vec![(1, vec![(3, x(2))])])
}

/// ℝ⁸ on `x₁ ≠ 0` with `ϑⁱ = x₁dxᵢ`. Type `X47`.
pub fn r8_conformal_x47() -> CoFrame {
    let rows = (1..=8)
        .map(|i| {
            let mut r = vec![Expr::zero(); 8];
            r[i - 1] = x(1);
            r
        })
        .collect();
    frame(FrameKind::SkewHermitian, rows)
}

/// ℝ⁸ with `ϑ¹ = dx₁ + x₄dx₅`; `ω` symplectic. Type `X1567`.
pub fn r8_x1567() -> CoFrame {
    perturbed(FrameKind::SkewHermitian, 8, vec![(1, vec![(5, x(4))])])
}

/// ℝ¹², last example. Pure type `X3`.
pub fn r12_pure_x3() -> CoFrame {
    perturbed(
        FrameKind::SkewHermitian,
        12,
        vec![
            (6, vec![(2, -x(4)), (5, x(1)), (8, -x(10)), (11, x(7))]),
            (9, vec![(2, -x(7)), (5, x(10)), (8, x(1)), (11, -x(4))]),
            (12, vec![(2, -x(10)), (5, -x(7)), (8, x(4)), (11, x(1))]),
        ],
    )
}

/// The 2-dimensional group frame `e = ∂y₁ + y₂∂y₂`, `f = e^{−y₁}∂y₂`:
/// `θᵉ = dy₁`, `θᶠ = e^{y₁}(dy₂ − y₂dy₁)`.
pub fn affine_line_group() -> CoFrame {
    let ey = Expr::exp(x(1));
    frame(
        FrameKind::Symplectic,
        vec![vec![c(1), c(0)], vec![-(x(2) * ey.clone()), ey]],
    )
}

/// The 6-dimensional unipotent group frame
/// `e₁ = ∂₁ + y₃∂₂ + y₅∂₆`, `e₂ = ∂₂ + y₄∂₆`, `e₃ = ∂₃ + y₄∂₅`,
/// `f_a = ∂_{a+3}`, declared unitary.
pub fn unipotent_group() -> CoFrame {
    perturbed(
        FrameKind::Unitary,
        6,
        vec![
            (2, vec![(1, -x(3))]),
            (5, vec![(3, -x(4))]),
            (6, vec![(2, -x(4)), (1, x(3) * x(4) - x(5))]),
        ],
    )
}

/// α-quaternionification of [`affine_line_group`]. Type `X17`.
pub fn quat_alpha_x17() -> CoFrame {
    quaternionify_alpha(&affine_line_group()).expect("symplectic input")
}

/// β-quaternionification of [`unipotent_group`]. Type `X1235`.
pub fn quat_beta_x1235() -> CoFrame {
    quaternionify_beta(&unipotent_group()).expect("unitary input")
}
