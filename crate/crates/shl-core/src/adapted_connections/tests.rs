use super::*;
use crate::rep_theory::{algebra_for_model, AlgebraKind, Decomposition, StructureKind};
use crate::tensor_algebra::spencer_delta;
use alloc::vec::Vec;

fn lcg(seed: &mut u64) -> i64 {
    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    ((*seed >> 33) % 7) as i64 - 3
}

fn random_vec(dim: usize, seed: &mut u64) -> Vec<Rational> {
    (0..dim).map(|_| Rational::from_int(lcg(seed))).collect()
}

fn random_matrix(dim: usize, seed: &mut u64) -> Matrix {
    Matrix::from_fn(dim, dim, |_, _| Rational::from_int(lcg(seed)))
}

fn random_form(dim: usize, seed: &mut u64) -> EndoOneForm {
    EndoOneForm::from_fn(dim, |_, _, _| Rational::from_int(lcg(seed)))
}

#[test]
fn w_examples() {
    let m = ModelSpace::standard(2).unwrap();
    let mut seed = 7;
    let xi = random_vec(8, &mut seed);
    let a = EndoOneForm::pure(&xi, &m.identity());
    let w = w_project(&m, &a);
    assert_eq!(w.w[0], a);
    for k in 1..4 {
        assert!(w.w[k].is_zero());
    }
    let a = EndoOneForm::pure(&xi, m.j(0));
    assert!(w_project(&m, &a).w.iter().all(EndoOneForm::is_zero));
}

#[test]
fn remainder_lies_in_structure_algebra() {
    let m = ModelSpace::standard(2).unwrap();
    let g = algebra_for_model(&m, AlgebraKind::SoStarPlusSp1);
    let mut seed = 11;
    let a = random_form(8, &mut seed);
    let rest = a.sub(&w_project(&m, &a).sum());
    for x in 0..8 {
        assert!(g.contains(&rest.at(x)));
    }
}

#[test]
fn w_projections_are_orthogonal_idempotents() {
    let m = ModelSpace::standard(2).unwrap();
    let mut seed = 5;
    let a = random_form(8, &mut seed);
    let w = w_project(&m, &a);
    for (i, wi) in w.w.iter().enumerate() {
        let again = w_project(&m, wi);
        for (j, wj) in again.w.iter().enumerate() {
            if i == j {
                assert_eq!(wj, wi);
            } else {
                assert!(wj.is_zero(), "w{} of w{} nonzero", j + 1, i + 1);
            }
        }
    }
}

#[test]
fn pi_11_examples() {
    let m = ModelSpace::standard(2).unwrap();
    assert!(pi_11(&m, m.j(0)).is_zero());
    let g = algebra_for_model(&m, AlgebraKind::GlNH);
    let b = g.basis[3].add(&g.basis[7]);
    assert_eq!(pi_11(&m, &b), b);
    // rank-one data against the displayed formula
    let mut e1 = alloc::vec![Rational::zero(); 8];
    e1[0] = Rational::one();
    let p = pi_11(&m, &rank_one(&m, &e1, &e1));
    for y in 0..8 {
        let mut expected = alloc::vec![Rational::zero(); 8];
        expected[0] = m.omega()[(0, y)].clone();
        for a in 0..3 {
            let c = &m.g(a)[(0, y)];
            for k in 0..8 {
                expected[k] -= c * &m.j(a)[(k, 0)];
            }
        }
        let expected: Vec<Rational> = expected.iter().map(|v| v * &Rational::new(1, 4)).collect();
        assert_eq!(p.column(y), expected);
    }
}

fn check_coefficient(m: &ModelSpace, family: PureFamily, seed: &mut u64) {
    let dim = m.dim();
    let xi = random_vec(dim, seed);
    let r = random_matrix(dim, seed);
    let b = (lcg(seed).unsigned_abs() % 3) as usize;
    let alpha = match family {
        PureFamily::Alpha1 => pure_alpha1(m, &xi),
        PureFamily::Alpha2 => pure_alpha2(m, &xi, &r),
        PureFamily::Alpha3 => pure_alpha3(m, &xi, &r, b),
        PureFamily::Alpha4 => pure_alpha4(m, &xi, &r, b),
    };
    let theta = act_on_phi0(m, &alpha);
    let c = hhat_contract(m, &theta).unwrap();
    let k = &contraction_coefficients(m.n())[family.index()];
    assert_eq!(c, lowered(m, &alpha).scale(k), "{family:?}");
}

#[test]
fn contraction_coefficients_at_n2() {
    let m = ModelSpace::standard(2).unwrap();
    let mut seed = 3;
    for family in PureFamily::ALL {
        for _ in 0..2 {
            check_coefficient(&m, family, &mut seed);
        }
    }
}

#[test]
fn pure_elements_land_in_their_modules() {
    let m = ModelSpace::standard(2).unwrap();
    let mut seed = 17;
    for family in PureFamily::ALL {
        let xi = random_vec(8, &mut seed);
        let r = random_matrix(8, &mut seed);
        let alpha = match family {
            PureFamily::Alpha1 => pure_alpha1(&m, &xi),
            PureFamily::Alpha2 => pure_alpha2(&m, &xi, &r),
            PureFamily::Alpha3 => pure_alpha3(&m, &xi, &r, 1),
            PureFamily::Alpha4 => pure_alpha4(&m, &xi, &r, 2),
        };
        let w = w_project(&m, &alpha);
        assert_eq!(w.w[family.index()], alpha, "{family:?}");
    }
}

#[test]
fn splitting_round_trip_at_n2() {
    let m = ModelSpace::standard(2).unwrap();
    let mut seed = 23;
    for _ in 0..3 {
        let a = random_form(8, &mut seed);
        let alpha = w_project(&m, &a).sum();
        let theta = act_on_phi0(&m, &alpha);
        assert_eq!(splitting_s(&m, &theta).unwrap(), alpha);
        assert!(round_trip_residual(&m, &theta).unwrap().is_zero());
    }
    let zero = Tensor::covariant(8, 5);
    assert!(splitting_s(&m, &zero).unwrap().is_zero());
}

#[test]
fn avol_is_trace_free() {
    let m = ModelSpace::standard(2).unwrap();
    let mut seed = 31;
    let xi = random_vec(8, &mut seed);
    let c = Tensor::from_fn(8, alloc::vec![Valence::Covariant; 3], |ix| {
        &xi[ix[0]] * &m.omega()[(ix[1], ix[2])]
    });
    let a = solve_a_tensor(&m, &c).unwrap();
    assert_eq!(trace2(&a), xi.iter().map(|x| x * &Rational::from_int(4)).collect::<Vec<_>>());
    let avol = avol_correction(&m, &c).unwrap();
    assert!(trace2(&avol).iter().all(Rational::is_zero));

    // random C skew in the last two slots
    let raw = Tensor::from_fn(8, alloc::vec![Valence::Covariant; 3], |_| Rational::from_int(lcg(&mut seed)));
    let c = Tensor::from_fn(8, alloc::vec![Valence::Covariant; 3], |ix| {
        raw.get(ix) - raw.get(&[ix[0], ix[2], ix[1]])
    });
    let avol = avol_correction(&m, &c).unwrap();
    assert!(trace2(&avol).iter().all(Rational::is_zero));
}

#[test]
fn avol_trace_free_input_is_unchanged() {
    let m = ModelSpace::standard(2).unwrap();
    // C = ξ ⊗ ω₀(B·, ·) with ω₀(B·, ·) skew and B trace-free, hence
    // Tr₂(A) = 0
    let mut seed = 5;
    let xi = random_vec(8, &mut seed);
    let mut b = asym_part(&m, &random_matrix(8, &mut seed));
    let t = b.trace() * Rational::new(1, 8);
    for i in 0..8 {
        b[(i, i)] -= t.clone();
    }
    let c = Tensor::from_fn(8, alloc::vec![Valence::Covariant; 3], |ix| {
        let by: Rational = (0..8).map(|k| &b[(k, ix[1])] * &m.omega()[(k, ix[2])]).sum();
        &xi[ix[0]] * &by
    });
    let a = solve_a_tensor(&m, &c).unwrap();
    assert!(trace2(&a).iter().all(Rational::is_zero));
    assert_eq!(avol_correction(&m, &c).unwrap(), a);
}

#[test]
fn avol_delta_matches_skew_symmetrization() {
    // ω₀(δA^vol(X,Y), Z) = ½C(X,Y,Z) − ½C(Y,X,Z)
    //   + τ(h(X,Z)Y − h(Y,Z)X + 2ω₀(X,Y)Z)/(8(n+1)),  τ = 2Tr₂(A)
    let m = ModelSpace::standard(2).unwrap();
    let mut seed = 77;
    let raw = Tensor::from_fn(8, alloc::vec![Valence::Covariant; 3], |_| Rational::from_int(lcg(&mut seed)));
    let c = Tensor::from_fn(8, alloc::vec![Valence::Covariant; 3], |ix| {
        raw.get(ix) - raw.get(&[ix[0], ix[2], ix[1]])
    });
    let tau: Vec<Rational> = trace2(&solve_a_tensor(&m, &c).unwrap())
        .iter()
        .map(|x| x * &Rational::from_int(2))
        .collect();
    let g: [Matrix; 3] = core::array::from_fn(|i| m.g(i));
    let dot = |v: Vec<Rational>| -> Rational { v.iter().zip(&tau).map(|(p, q)| p * q).sum() };
    let half = Rational::new(1, 2);
    let k = Rational::new(1, 24);
    let expected = Tensor::from_fn(8, alloc::vec![Valence::Covariant; 3], |ix| {
        let (x, y, z) = (ix[0], ix[1], ix[2]);
        let mut w = h_apply(&m, &g, x, z, y);
        for (wi, vi) in w.iter_mut().zip(h_apply(&m, &g, y, z, x)) {
            *wi -= vi;
        }
        w[z] += &m.omega()[(x, y)] * &Rational::from_int(2);
        &half * c.get(ix) - &half * c.get(&[y, x, z]) + &k * &dot(w)
    });
    let avol = avol_correction(&m, &c).unwrap();
    let delta = spencer_delta(&avol);
    assert_eq!(lower(&m, &delta).data(), expected.data());
}

#[test]
fn conformal_delta_is_vectorial() {
    let m = ModelSpace::standard(2).unwrap();
    let d = Decomposition::new(&m, StructureKind::HsH).unwrap();
    let mut df = alloc::vec![Rational::zero(); 8];
    df[0] = Rational::one();
    for conv in [TransposeConvention::Left, TransposeConvention::Right] {
        let delta = conformal_change_delta_with(&m, &df, conv);
        let t = spencer_delta(&delta);
        let r = crate::rep_theory::classify_torsion(&d, &t).unwrap();
        assert_eq!(r.type_string(), "X47", "{conv:?}");
    }
    assert!(conformal_change_delta(&m, &alloc::vec![Rational::zero(); 8]).is_zero());
}
