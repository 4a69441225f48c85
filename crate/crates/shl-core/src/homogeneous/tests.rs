use std::sync::OnceLock;
use std::vec;
use std::vec::Vec;

use super::examples::*;
use super::*;
use crate::eh_model::ModelSpace;
use crate::rep_theory::{isotypic_decomposition, AlgebraKind};
use crate::tensor_algebra::{spencer_delta, EndoOneForm};

fn hsh3() -> &'static Decomposition {
    static D: OnceLock<Decomposition> = OnceLock::new();
    D.get_or_init(|| isotypic_decomposition(StructureKind::HsH, 3).unwrap())
}

fn lcg(seed: &mut u64) -> i64 {
    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    ((*seed >> 33) % 5) as i64 - 2
}

fn units(dim: usize) -> Vec<Vec<Rational>> {
    (0..dim)
        .map(|i| {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            v
        })
        .collect()
}

fn abelian(dim: usize) -> HomogeneousData {
    let brackets = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
    HomogeneousData::new(StructureKind::HsH, brackets, vec![], units(dim), Matrix::identity(dim), None, vec![]).unwrap()
}

fn random_so_star(m: &ModelSpace, seed: &mut u64) -> Matrix {
    let alg = algebra_for_model(m, AlgebraKind::SoStar);
    let mut out = Matrix::zeros(m.dim(), m.dim());
    for b in &alg.basis {
        out = out.add(&b.scale(&Rational::from_int(lcg(seed))));
    }
    out
}

#[test]
fn abelian_is_flat_and_torsion_free() {
    let nt = nomizu_torsion_curvature(&abelian(8));
    assert!(nt.torsion.is_zero());
    assert!(nt.curvature.is_zero());
}

#[test]
fn abelian_classifies_to_zero() {
    let d = isotypic_decomposition(StructureKind::HsH, 2).unwrap();
    let r = classify_homogeneous(&abelian(8), &d).unwrap();
    assert!(r.components.iter().all(|c| c.zero));
}

#[test]
fn triangular_group_type() {
    let tri = triangular_group();
    let nt = nomizu_torsion_curvature(&tri);
    assert!(nt.curvature.is_zero());
    let r = classify_homogeneous(&tri, hsh3()).unwrap();
    assert_eq!(r.type_string(), "X35");
    assert!(r.flags.integrable);
}

#[test]
fn triangular_display_differs_in_one_sign() {
    // the printed e₄*∧e₆*⊗e₂ term has the opposite sign of −[·,·] under
    // the stated identification; everything else agrees
    let t = nomizu_torsion_curvature(&triangular_group()).torsion;
    let diff = triangular_display().diff(&t);
    assert_eq!(diff.mismatches.len(), 1, "{}", diff.report());
    let m = &diff.mismatches[0];
    assert_eq!((m.component, m.pair), (1, (3, 5)));
    assert_eq!(m.computed, -Rational::one());
    assert_eq!(m.displayed, Rational::one());
    // read literally, the display would be of type X1235; the stated type
    // X35 is that of the bracket, so the printed sign is a typo
    let shown = classify_torsion(hsh3(), &triangular_display().to_tensor()).unwrap();
    assert_eq!(shown.type_string(), "X1235");
}

#[test]
fn sl4_sl2_matches_display_and_type() {
    let hd = sl4_sl2().unwrap();
    assert_eq!(hd.dim_k(), 15);
    let nt = nomizu_torsion_curvature(&hd);
    let diff = sl4_sl2_display().diff(&nt.torsion);
    assert_eq!(diff.compared, 12 * 66);
    assert!(diff.is_exact_match(), "{}", diff.report());
    let r = classify_homogeneous(&hd, hsh3()).unwrap();
    assert_eq!(r.type_string(), "X1234567");
}

#[test]
fn sl4_sl2_canonical_curvature_is_isotropy_valued() {
    let hd = sl4_sl2().unwrap();
    let nt = nomizu_torsion_curvature(&hd);
    let alg = algebra_for_model(&ModelSpace::standard(3).unwrap(), AlgebraKind::SoStar);
    let mut nonzero = false;
    for a in 0..12 {
        for b in 0..12 {
            let r = Matrix::from_fn(12, 12, |k, z| nt.curvature.get(&[a, b, z, k]).clone());
            nonzero |= !r.is_zero();
            assert!(alg.contains(&r));
        }
    }
    assert!(nonzero);
}

#[test]
fn canonical_torsion_is_minus_the_m_bracket() {
    // triangular group transported by a random invertible identification
    let base = triangular_group();
    let mut seed = 11;
    for _ in 0..5 {
        let alpha = loop {
            let a = Matrix::from_fn(12, 12, |_, _| Rational::from_int(lcg(&mut seed)));
            if a.inverse().is_some() {
                break a;
            }
        };
        let hd = HomogeneousData::new(
            StructureKind::HsH,
            base.brackets().to_vec(),
            vec![],
            units(12),
            alpha.clone(),
            None,
            vec![],
        )
        .unwrap();
        let t = nomizu_torsion_curvature(&hd).torsion;
        let inv = alpha.inverse().unwrap();
        for a in 0..12 {
            for b in 0..12 {
                let x = inv.column(a);
                let y = inv.column(b);
                let mut br = vec![Rational::zero(); 12];
                for (i, xi) in x.iter().enumerate() {
                    for (j, yj) in y.iter().enumerate() {
                        for k in 0..12 {
                            br[k] = &br[k] + &(&(xi * yj) * &base.brackets()[i][j][k]);
                        }
                    }
                }
                let expected: Vec<Rational> = alpha.mul_vec(&br).into_iter().map(|v| -v).collect();
                let got: Vec<Rational> = (0..12).map(|k| t.get(&[a, b, k]).clone()).collect();
                assert_eq!(got, expected);
            }
        }
    }
}

#[test]
fn nomizu_map_shifts_torsion_by_spencer_delta() {
    let tri = triangular_group();
    let m = ModelSpace::standard(3).unwrap();
    let mut seed = 5;
    let nm: Vec<Matrix> = (0..12).map(|_| random_so_star(&m, &mut seed)).collect();
    let with = tri.with_nomizu(Some(nm.clone())).unwrap();
    let t0 = nomizu_torsion_curvature(&tri).torsion;
    let t1 = nomizu_torsion_curvature(&with).torsion;
    let delta = spencer_delta(&EndoOneForm::from_matrices(&nm));
    assert_eq!(t1.sub(&t0).unwrap().data(), delta.data());
    // adapted connections all have the same intrinsic torsion
    let r = classify_homogeneous(&with, hsh3()).unwrap();
    assert_eq!(r.type_string(), "X35");
}

#[test]
fn nomizu_curvature_formula() {
    // on an abelian algebra R(x, y) = [α(x), α(y)]
    let m = ModelSpace::standard(2).unwrap();
    let mut seed = 3;
    let nm: Vec<Matrix> = (0..8).map(|_| random_so_star(&m, &mut seed)).collect();
    let hd = abelian(8).with_nomizu(Some(nm.clone())).unwrap();
    let nt = nomizu_torsion_curvature(&hd);
    for a in 0..8 {
        for b in 0..8 {
            let expected = nm[a].commutator(&nm[b]);
            let got = Matrix::from_fn(8, 8, |k, z| nt.curvature.get(&[a, b, z, k]).clone());
            assert_eq!(got, expected);
        }
    }
}

#[test]
fn validation_rejects_jacobi_failure() {
    let mut br = triangular_group().brackets().to_vec();
    // [e₁, e₂] = e₃ on top of the existing brackets breaks Jacobi
    br[0][1][2] = Rational::one();
    br[1][0][2] = -Rational::one();
    let err = HomogeneousData::new(StructureKind::HsH, br, vec![], units(12), Matrix::identity(12), None, vec![])
        .unwrap_err();
    assert!(matches!(err, HomogeneousError::Jacobi { .. }), "{err}");
}

#[test]
fn validation_rejects_non_antisymmetric_constants() {
    let mut br = triangular_group().brackets().to_vec();
    br[2][0][1] = Rational::from_int(5);
    let err = HomogeneousData::new(StructureKind::HsH, br, vec![], units(12), Matrix::identity(12), None, vec![])
        .unwrap_err();
    assert_eq!(err, HomogeneousError::Antisymmetry { i: 0, j: 2 });
}

#[test]
fn validation_rejects_singular_identification() {
    let br = triangular_group().brackets().to_vec();
    let err = HomogeneousData::new(StructureKind::HsH, br, vec![], units(12), Matrix::zeros(12, 12), None, vec![])
        .unwrap_err();
    assert_eq!(err, HomogeneousError::SingularIdentification);
}

#[test]
fn validation_rejects_nomizu_outside_algebra() {
    let mut nm = vec![Matrix::zeros(8, 8); 8];
    nm[3] = Matrix::identity(8);
    let err = abelian(8).with_nomizu(Some(nm)).unwrap_err();
    assert_eq!(err, HomogeneousError::NomizuOutsideAlgebra(3, "so*(2n)"));
}

#[test]
fn validation_rejects_wrong_isotropy() {
    let hd = sl4_sl2().unwrap();
    let mut di = hd.di().to_vec();
    di[1] = di[1].scale(&Rational::from_int(2));
    let err = HomogeneousData::new(
        StructureKind::HsH,
        hd.brackets().to_vec(),
        hd.l_basis().to_vec(),
        hd.m_basis().to_vec(),
        hd.alpha_eh().clone(),
        None,
        di,
    )
    .unwrap_err();
    assert_eq!(err, HomogeneousError::IsotropyMismatch(1));
}

#[test]
fn validation_rejects_non_reductive_split() {
    // replace m₁ by m₁ + l₁: [l, m] then leaves the new complement
    let hd = sl4_sl2().unwrap();
    let mut m = sl4_m_basis();
    m[0] = m[0].add(&sl4_l_basis()[0]);
    let err = HomogeneousData::from_matrices(StructureKind::HsH, &m, &sl4_l_basis(), None).unwrap_err();
    assert!(matches!(err, HomogeneousError::NotReductive { .. }), "{err}");
    assert_eq!(hd.n(), 3);
}

#[test]
fn validation_rejects_bad_shapes() {
    let err = HomogeneousData::new(StructureKind::HsH, vec![], vec![], vec![], Matrix::zeros(0, 0), None, vec![])
        .unwrap_err();
    assert!(matches!(err, HomogeneousError::Shape { .. }));
}

#[test]
fn classifier_dimension_must_match() {
    let d = isotypic_decomposition(StructureKind::HsH, 2).unwrap();
    assert!(matches!(
        classify_homogeneous(&triangular_group(), &d),
        Err(HomogeneousError::Shape { .. })
    ));
}
