//! The two homogeneous examples: a 12-dimensional group of lower triangular
//! quaternionic matrices (`𝔩 = 0`) and `Sl(4,ℝ)/Sl(2,ℝ)`, together with
//! transcriptions of their printed torsion.

use alloc::vec;
use alloc::vec::Vec;

use super::display::{DisplayRegion, DisplayTerm, TorsionDisplay};
use super::{HomogeneousData, HomogeneousError};
use crate::linalg::Matrix;
use crate::rep_theory::StructureKind;
use crate::scalar_expr::Rational;
use crate::tensor_algebra::{SymKind, Tensor, Valence};

pub(crate) fn torsion_shape(dim: usize) -> Tensor {
    let mut t = Tensor::zeros(dim, vec![Valence::Covariant, Valence::Covariant, Valence::Contravariant]);
    t.mark(&[0, 1], SymKind::Alternating);
    t
}

/// Model index of the quaternion component `part ∈ {1, i, j, k}` of the
/// `c`-th quaternionic coordinate (0-based) at `n = 3`: `(e_c, e_{c+3},
/// f_c, f_{c+3})`.
fn quat_slot(c: usize, part: usize) -> usize {
    [c, c + 3, 6 + c, 9 + c][part]
}

/// Quaternion product table: `unit_p · unit_q = sign · unit_r`.
fn unit_product(p: usize, q: usize) -> (i64, usize) {
    const TABLE: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    TABLE[p][q]
}

/// The Lie algebra of strictly lower triangular `3 × 3` quaternionic
/// matrices with entries `q₂₁ = x₁ + x₄i + x₇j + x₁₀k`,
/// `q₃₁ = x₂ + x₅i + …`, `q₃₂ = x₃ + x₆i + …`, where `x₁…x₁₂` are
/// coordinates in a skew-Hermitian basis. Canonical connection, `𝔩 = 0`.
pub fn triangular_group() -> HomogeneousData {
    // only q₃₂·q₂₁ lands in q₃₁: [X, Y]₃₁ = X₃₂Y₂₁ − Y₃₂X₂₁
    let dim = 12;
    let mut brackets = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
    for p in 0..4 {
        for q in 0..4 {
            let (s, r) = unit_product(p, q);
            let x32 = quat_slot(2, p);
            let y21 = quat_slot(0, q);
            let out = quat_slot(1, r);
            let v = Rational::from_int(s);
            brackets[x32][y21][out] = &brackets[x32][y21][out] + &v;
            brackets[y21][x32][out] = &brackets[y21][x32][out] - &v;
        }
    }
    let m_basis = (0..dim)
        .map(|i| {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            v
        })
        .collect();
    HomogeneousData::new(StructureKind::HsH, brackets, vec![], m_basis, Matrix::identity(dim), None, vec![])
        .expect("triangular group data is valid")
}

/// `𝔪 ⊂ 𝔰𝔩(4,ℝ)`: the matrix for `a_i = 1`, all other coordinates zero.
pub fn sl4_m_basis() -> Vec<Matrix> {
    let h = |k: i64| Rational::new(k, 2);
    let i = Rational::from_int;
    (1..=12)
        .map(|idx| {
            let a = |j: usize| if j == idx { i(1) } else { i(0) };
            let rows = vec![
                vec![a(3), a(9), &(&(&a(1) + &a(5)) + &a(7)) + &a(11), -(&a(1) + &a(5))],
                vec![a(6), a(12), &(&a(1) + &a(11)) * &i(-2), &(&(&a(1) + &a(5)) - &a(7)) + &a(11)],
                vec![
                    &(&(&a(2) - &a(4)) - &a(8)) - &a(10),
                    &a(8) + &a(10),
                    &(&a(3) + &a(12)) * &h(-1),
                    i(0),
                ],
                vec![
                    &(&a(2) - &a(10)) * &i(2),
                    &(&(&a(8) + &a(10)) - &a(2)) - &a(4),
                    i(0),
                    &(&a(3) + &a(12)) * &h(-1),
                ],
            ];
            Matrix::from_rows(rows)
        })
        .collect()
}

/// `𝔩 = 𝔰𝔩(2,ℝ)` in the lower right block: `diag(0,0,1,−1)`, `E₃₄`, `E₄₃`.
pub fn sl4_l_basis() -> Vec<Matrix> {
    let mut h = Matrix::zeros(4, 4);
    h[(2, 2)] = Rational::one();
    h[(3, 3)] = -Rational::one();
    let mut e = Matrix::zeros(4, 4);
    e[(2, 3)] = Rational::one();
    let mut f = Matrix::zeros(4, 4);
    f[(3, 2)] = Rational::one();
    vec![h, e, f]
}

/// `Sl(4,ℝ)/Sl(2,ℝ)` with `α_{[EH]}(A) = (a₁, …, a₁₂)` and the canonical
/// connection.
pub fn sl4_sl2() -> Result<HomogeneousData, HomogeneousError> {
    HomogeneousData::from_matrices(StructureKind::HsH, &sl4_m_basis(), &sl4_l_basis(), None)
}

fn term(component: usize, num: i64, den: i64, a: usize, b: usize, region: DisplayRegion) -> DisplayTerm {
    DisplayTerm {
        component: component - 1,
        coeff: Rational::new(num, den),
        a: a - 1,
        b: b - 1,
        region,
    }
}

fn push_clean(out: &mut Vec<DisplayTerm>, component: usize, rows: &[(i64, i64, usize, usize)]) {
    for &(num, den, a, b) in rows {
        out.push(term(component, num, den, a, b, DisplayRegion::Clean));
    }
}

/// The printed components `t₁ … t₁₂` of the `Sl(4,ℝ)/Sl(2,ℝ)` torsion,
/// transcribed as printed (indices 1-based in the table).
///
/// Two spots are typeset defectively: `t₁` opens `½(` and never closes it
/// (read here as `½` applying to every remaining term), and `t₁₀` ends in
/// a dangling `∧ ½a₅` while `t₁₁` starts with a bare `b₁₂` (read as the
/// term `½ a₅∧b₁₂` of `t₁₁`).
pub fn sl4_sl2_display() -> TorsionDisplay {
    use DisplayRegion::*;
    let mut t = Vec::new();
    push_clean(&mut t, 1, &[(1, 1, 1, 3), (1, 1, 1, 12), (1, 1, 7, 9), (-1, 1, 5, 9)]);
    for &(s, a, b) in &[(1, 6, 11), (-1, 5, 12), (1, 6, 7), (1, 11, 12), (1, 7, 12), (1, 3, 11), (1, 3, 7), (-1, 3, 5)] {
        t.push(term(1, s, 2, a, b, UnbalancedParenthesis));
    }
    push_clean(
        &mut t,
        2,
        &[
            (-1, 1, 2, 12), (1, 1, 4, 9), (1, 1, 8, 9), (-1, 2, 3, 10), (1, 2, 6, 8), (-1, 1, 2, 3),
            (-1, 2, 10, 12), (-1, 2, 3, 4), (-1, 2, 8, 12), (1, 2, 6, 10), (-1, 2, 3, 8), (-1, 2, 4, 12),
        ],
    );
    push_clean(
        &mut t,
        3,
        &[
            (-1, 1, 4, 5), (1, 1, 2, 7), (1, 1, 7, 10), (1, 1, 2, 11), (-1, 1, 8, 11), (-1, 1, 1, 10),
            (-1, 1, 5, 10), (1, 1, 6, 9), (1, 1, 5, 8), (-1, 1, 4, 7), (1, 1, 1, 8), (-1, 1, 2, 5),
            (1, 1, 7, 8), (-1, 1, 4, 11), (1, 1, 1, 4), (1, 1, 1, 2), (-1, 1, 10, 11),
        ],
    );
    push_clean(
        &mut t,
        4,
        &[
            (1, 1, 9, 10), (1, 1, 2, 9), (-1, 2, 2, 12), (1, 2, 3, 10), (-1, 2, 6, 8), (1, 2, 2, 3),
            (1, 2, 10, 12), (1, 1, 3, 4), (1, 2, 8, 12), (-1, 2, 6, 10), (1, 2, 3, 8), (-1, 1, 4, 12),
        ],
    );
    push_clean(
        &mut t,
        5,
        &[
            (1, 1, 5, 12), (-1, 2, 6, 11), (1, 1, 9, 11), (-1, 2, 7, 12), (1, 2, 1, 3), (-1, 2, 6, 7),
            (-1, 2, 11, 12), (-1, 2, 3, 11), (-1, 2, 1, 12), (-1, 1, 1, 9), (-1, 2, 3, 7), (-1, 1, 3, 5),
        ],
    );
    push_clean(
        &mut t,
        6,
        &[
            (-2, 1, 2, 7), (-2, 1, 7, 10), (2, 1, 8, 11), (1, 1, 3, 6), (2, 1, 5, 10), (-2, 1, 1, 8),
            (1, 1, 6, 12), (2, 1, 2, 5), (2, 1, 4, 11), (-2, 1, 1, 4),
        ],
    );
    push_clean(
        &mut t,
        7,
        &[
            (-1, 2, 5, 12), (1, 1, 7, 12), (1, 2, 1, 3), (1, 1, 9, 11), (-1, 1, 3, 7), (-1, 2, 11, 12),
            (-1, 2, 3, 11), (1, 2, 1, 6), (-1, 2, 3, 5), (1, 2, 5, 6), (-1, 2, 1, 12), (-1, 1, 1, 9),
        ],
    );
    push_clean(
        &mut t,
        8,
        &[
            (-1, 1, 9, 10), (-1, 1, 2, 9), (1, 2, 2, 6), (1, 2, 2, 12), (-1, 2, 3, 10), (-1, 2, 2, 3),
            (-1, 2, 10, 12), (1, 2, 3, 4), (-1, 1, 8, 12), (1, 2, 4, 6), (1, 1, 3, 8), (1, 2, 4, 12),
        ],
    );
    push_clean(
        &mut t,
        9,
        &[
            (1, 1, 4, 5), (-1, 1, 9, 12), (-1, 1, 7, 10), (1, 1, 8, 11), (-1, 1, 3, 9), (1, 1, 2, 5),
            (-1, 1, 7, 8), (-1, 1, 1, 4), (-1, 1, 1, 2), (1, 1, 10, 11),
        ],
    );
    push_clean(
        &mut t,
        10,
        &[
            (-1, 2, 2, 6), (-1, 2, 2, 12), (1, 1, 4, 9), (1, 1, 8, 9), (1, 1, 3, 10), (1, 2, 2, 3),
            (-1, 1, 10, 12), (-1, 2, 3, 4), (-1, 2, 8, 12), (-1, 2, 4, 6), (-1, 2, 3, 8),
        ],
    );
    t.push(term(10, -1, 2, 4, 12, DanglingFragment));
    t.push(term(11, 1, 2, 5, 12, DanglingFragment));
    push_clean(
        &mut t,
        11,
        &[
            (1, 1, 5, 9), (-1, 1, 7, 9), (-1, 2, 3, 7), (-1, 2, 1, 3), (-1, 2, 5, 6), (1, 1, 11, 12),
            (1, 2, 1, 12), (-1, 1, 3, 11), (-1, 2, 1, 6), (-1, 2, 7, 12), (1, 2, 3, 5),
        ],
    );
    push_clean(
        &mut t,
        12,
        &[
            (-1, 1, 4, 5), (1, 1, 2, 7), (1, 1, 7, 10), (-1, 1, 2, 11), (-1, 1, 8, 11), (1, 1, 1, 10),
            (-1, 1, 5, 10), (-1, 1, 6, 9), (-1, 1, 5, 8), (1, 1, 4, 7), (1, 1, 1, 8), (-1, 1, 2, 5),
            (1, 1, 7, 8), (-1, 1, 4, 11), (1, 1, 1, 4), (1, 1, 1, 2), (-1, 1, 10, 11),
        ],
    );
    TorsionDisplay { dim: 12, terms: t }
}

/// The printed torsion of the triangular group, with `e₁…e₆, f₁…f₆` as
/// model indices `0…11`.
pub fn triangular_display() -> TorsionDisplay {
    let e = |c: usize| c - 1;
    let f = |c: usize| 5 + c;
    let rows: [(usize, [(i64, usize, usize); 4]); 4] = [
        (e(2), [(1, e(1), e(3)), (-1, f(4), f(6)), (1, e(4), e(6)), (-1, f(1), f(3))]),
        (e(5), [(1, e(1), e(6)), (-1, f(3), f(4)), (-1, e(3), e(4)), (-1, f(1), f(6))]),
        (f(2), [(1, e(1), f(3)), (-1, f(4), e(6)), (1, e(4), f(6)), (1, f(1), e(3))]),
        (f(5), [(1, e(1), f(6)), (1, f(4), e(3)), (-1, e(4), f(3)), (1, f(1), e(6))]),
    ];
    let mut terms = Vec::new();
    for (out, ts) in rows {
        for (s, a, b) in ts {
            terms.push(DisplayTerm {
                component: out,
                coeff: Rational::from_int(s),
                a,
                b,
                region: DisplayRegion::Clean,
            });
        }
    }
    TorsionDisplay { dim: 12, terms }
}
