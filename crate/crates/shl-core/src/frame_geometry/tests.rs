use std::sync::OnceLock;
use std::vec;
use std::vec::Vec;

use super::examples::*;
use super::*;
use crate::rep_theory::{isotypic_decomposition, StructureKind};
use crate::scalar_expr::{int, rat};

fn hsh2() -> &'static Decomposition {
    static D: OnceLock<Decomposition> = OnceLock::new();
    D.get_or_init(|| isotypic_decomposition(StructureKind::HsH, 2).unwrap())
}

fn origin(dim: usize) -> Vec<Rational> {
    vec![Rational::zero(); dim]
}

fn torsion_from(dim: usize, entries: &[([usize; 2], usize, Rational)]) -> Tensor {
    let mut t = Tensor::zeros(dim, TORSION_SHAPE.to_vec());
    for ([a, b], k, v) in entries {
        t.set(&[*a, *b, *k], v.clone());
        t.set(&[*b, *a, *k], -v.clone());
    }
    t
}

fn all_examples() -> Vec<CoFrame> {
    vec![
        r12_x12(),
        r8_x123567(),
        r8_conformal_x47(),
        r8_x1567(),
        r12_pure_x3(),
        quat_alpha_x17(),
        quat_beta_x1235(),
    ]
}

#[test]
fn identity_coframe_is_flat() {
    let cf = CoFrame::identity(FrameKind::SkewHermitian, 8).unwrap();
    let p: Vec<Rational> = (1..=8).map(|i| rat(i, 3)).collect();
    let t = coframe_torsion(&cf, &p).unwrap();
    assert!(t.exact().unwrap().is_zero());
}

#[test]
fn second_r8_example_torsion() {
    let t = coframe_torsion(&r8_x123567(), &origin(8)).unwrap();
    let expected = torsion_from(8, &[([1, 2], 0, int(1))]);
    assert_eq!(t.exact().unwrap().data(), expected.data());
}

#[test]
fn conformal_example_torsion() {
    let mut p = origin(8);
    p[0] = int(1);
    let t = coframe_torsion(&r8_conformal_x47(), &p).unwrap();
    let entries: Vec<_> = (1..8).map(|a| ([0, a], a, int(1))).collect();
    assert_eq!(t.exact().unwrap().data(), torsion_from(8, &entries).data());
    // away from x₁ = 1: 1/x₁ in coordinates, 1/x₁² in the frame
    p[0] = int(4);
    let Sampled::Exact(t) = coordinate_torsion(&r8_conformal_x47(), &p).unwrap() else { panic!() };
    let entries: Vec<_> = (1..8).map(|a| ([0, a], a, rat(1, 4))).collect();
    assert_eq!(t.data(), torsion_from(8, &entries).data());
    let t = coframe_torsion(&r8_conformal_x47(), &p).unwrap();
    let entries: Vec<_> = (1..8).map(|a| ([0, a], a, rat(1, 16))).collect();
    assert_eq!(t.exact().unwrap().data(), torsion_from(8, &entries).data());
}

#[test]
fn singular_point_is_rejected() {
    let err = coframe_torsion(&r8_conformal_x47(), &origin(8)).unwrap_err();
    assert_eq!(err, FrameError::Singular);
}

#[test]
fn wrong_point_dimension() {
    let err = coframe_torsion(&r8_x1567(), &origin(3)).unwrap_err();
    assert!(matches!(err, FrameError::PointDimension { expected: 8, got: 3 }));
}

#[test]
fn first_r12_example_torsion_in_coordinates() {
    let t = coordinate_torsion(&r12_x12(), &origin(12)).unwrap();
    let Sampled::Exact(t) = t else { panic!("origin is exact") };
    let m1 = int(-1);
    let one = int(1);
    let expected = torsion_from(
        12,
        &[
            ([1, 3], 5, m1.clone()),
            ([0, 4], 5, m1.clone()),
            ([7, 9], 5, m1.clone()),
            ([6, 10], 5, m1),
            ([1, 9], 11, one.clone()),
            ([4, 6], 11, one.clone()),
            ([3, 7], 11, one.clone()),
            ([0, 10], 11, one),
        ],
    );
    assert_eq!(t.data(), expected.data());
}

#[test]
fn d_squared_vanishes_on_examples() {
    for cf in all_examples() {
        for f in cf.exterior_derivatives() {
            assert!(f.d().is_identically_zero());
        }
    }
}

#[test]
fn domega_matches_cyclic_torsion() {
    for cf in all_examples() {
        let mut p: Vec<Rational> = (0..cf.dim()).map(|i| rat(i as i64 % 3 - 1, 2)).collect();
        p[0] = int(1);
        let check = domega_check(&cf, &p).unwrap();
        assert!(check.holds(), "{check:?}");
        let at_origin = cf.dim();
        if cf != r8_conformal_x47() {
            assert!(domega_check(&cf, &origin(at_origin)).unwrap().holds());
        }
    }
}

#[test]
fn domega_float_path() {
    // exp(1/2) is not rational, so this point takes the float path
    let cf = quat_alpha_x17();
    let p: Vec<Rational> = (0..8).map(|i| rat(1 + i as i64, 2)).collect();
    let check = domega_check(&cf, &p).unwrap();
    assert!(!check.exact);
    assert!(check.holds(), "{check:?}");
    assert!(check.max_domega < 1e-12);
}

#[test]
fn symplectic_examples_have_closed_omega() {
    for cf in [r8_x1567(), quat_alpha_x17()] {
        assert!(cf.induced_omega().d().is_identically_zero());
    }
    assert!(!r8_x123567().induced_omega().d().is_identically_zero());
    assert!(!quat_beta_x1235().induced_omega().d().is_identically_zero());
}

#[test]
fn classify_n2_examples_at_origin() {
    let d = hsh2();
    let r = classify_frame_at(&r8_x123567(), &origin(8), d).unwrap();
    assert_eq!(r.type_string(), "X123567");
    let r = classify_frame_at(&r8_x1567(), &origin(8), d).unwrap();
    assert_eq!(r.type_string(), "X1567");
    assert!(r.flags.symplectic);
    let mut p = origin(8);
    p[0] = int(1);
    let r = classify_frame_at(&r8_conformal_x47(), &p, d).unwrap();
    assert_eq!(r.type_string(), "X47");
    assert!(r.flags.integrable);
}

#[test]
fn classify_rejects_mismatched_dimension() {
    let err = classify_frame_at(&r12_x12(), &origin(12), hsh2()).unwrap_err();
    assert!(matches!(err, FrameError::ClassifierDimension { expected: 2, got: 3 }));
}

#[test]
fn alpha_example_torsion_and_type() {
    let cf = quat_alpha_x17();
    assert_eq!(cf.dim(), 8);
    let Sampled::Exact(t) = coordinate_torsion(&cf, &origin(8)).unwrap() else {
        panic!("origin is exact")
    };
    let entries: Vec<_> = (0..4).map(|j| ([2 * j, 2 * j + 1], 2 * j + 1, int(2))).collect();
    assert_eq!(t.data(), torsion_from(8, &entries).data());
    let r = classify_frame_at(&cf, &origin(8), hsh2()).unwrap();
    assert_eq!(r.type_string(), "X17");
    assert!(r.flags.symplectic);
    assert!(!r.flags.integrable);
}

#[test]
fn alpha_omega_is_half_the_sum_of_copies() {
    let cf = quat_alpha_x17();
    let w = cf.induced_omega().simplify();
    let mut expected = DiffForm::zero(8, 2);
    for j in 0..4 {
        let coeff = Expr::constant(rat(1, 2)) * Expr::exp(Expr::var(2 * j + 1));
        expected.add_term(vec![2 * j, 2 * j + 1], coeff);
    }
    let diff = w.add(&expected.scale(&Expr::int(-1)));
    assert!(diff.is_identically_zero(), "{w:?}");
}

#[test]
fn alpha_is_unchanged_by_symplectic_change_of_input_frame() {
    // θ' = Aθ with A = [[1, 0], [3, 1]] ∈ Sp(2): ω is unchanged on the input
    let base = affine_line_group();
    let f = base.forms();
    let changed = CoFrame::new(
        FrameKind::Symplectic,
        vec![
            f[0].clone(),
            f[0].iter().zip(&f[1]).map(|(a, b)| Expr::int(3) * a.clone() + b.clone()).collect(),
        ],
    )
    .unwrap();
    let w0 = quaternionify_alpha(&base).unwrap().induced_omega();
    let w1 = quaternionify_alpha(&changed).unwrap().induced_omega();
    assert!(w0.add(&w1.scale(&Expr::int(-1))).is_identically_zero());
}

#[test]
fn alpha_rejects_skew_hermitian_input() {
    let err = quaternionify_alpha(&r8_x1567()).unwrap_err();
    assert!(matches!(err, FrameError::WrongKind { .. }));
}

#[test]
fn beta_of_flat_unitary_frame_is_flat() {
    let cf = CoFrame::identity(FrameKind::Unitary, 4).unwrap();
    let out = quaternionify_beta(&cf).unwrap();
    assert_eq!(out.dim(), 8);
    let t = coframe_torsion(&out, &origin(8)).unwrap();
    assert!(t.exact().unwrap().is_zero());
}

#[test]
fn beta_requires_unitary_input() {
    assert!(quaternionify_beta(&affine_line_group()).is_err());
}

#[test]
fn beta_example_omega() {
    // ω on the unipotent group; the output form is its sum over both copies
    let input = unipotent_group().induced_omega().simplify();
    let v = Expr::var;
    let mut expected = DiffForm::zero(6, 2);
    expected.add_term(vec![0, 2], v(5));
    expected.add_term(vec![0, 3], Expr::one());
    expected.add_term(vec![0, 4], -v(3));
    expected.add_term(vec![1, 4], Expr::one());
    expected.add_term(vec![2, 5], Expr::one());
    assert!(input.add(&expected.scale(&Expr::int(-1))).is_identically_zero(), "{input:?}");

    let out = quat_beta_x1235().induced_omega();
    let mut both = DiffForm::zero(12, 2);
    for (ix, c) in expected.terms() {
        both.add_term(ix.to_vec(), c.clone());
        let shifted: Vec<Expr> = (1..=6).map(|i| Expr::var(i + 6)).collect();
        both.add_term(ix.iter().map(|i| i + 6).collect(), c.substitute(&shifted));
    }
    assert!(out.add(&both.scale(&Expr::int(-1))).is_identically_zero());
}

#[test]
fn cotangent_model_checks() {
    for n in 1..=3 {
        let m = cotangent_model(n);
        let c = m.check();
        assert_eq!(c.omega_rank, 8 * n);
        assert!(c.all_hold(n), "n = {n}: {c:?}");
    }
}

#[test]
fn frame_kind_round_trip() {
    for k in [FrameKind::SkewHermitian, FrameKind::Symplectic, FrameKind::Unitary] {
        assert_eq!(k.as_str().parse::<FrameKind>().unwrap(), k);
    }
    assert!("hermitian".parse::<FrameKind>().is_err());
}

#[test]
fn coframe_validation() {
    assert_eq!(CoFrame::new(FrameKind::SkewHermitian, vec![]), Err(FrameError::Empty));
    let bad = vec![vec![Expr::var(3), Expr::zero()], vec![Expr::zero(), Expr::one()]];
    assert!(matches!(
        CoFrame::new(FrameKind::Symplectic, bad),
        Err(FrameError::VariableOutOfRange { var: 3, .. })
    ));
    assert!(matches!(
        CoFrame::identity(FrameKind::SkewHermitian, 6),
        Err(FrameError::Dimension { .. })
    ));
}
