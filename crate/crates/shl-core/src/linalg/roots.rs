use alloc::vec::Vec;

use num_complex::Complex64;

use crate::scalar_expr::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial of degree {degree} has only {found} rational roots; the remaining factor is irreducible over Q")]
    Irrational { degree: usize, found: usize },
    #[error("constant polynomial has no roots")]
    Constant,
}

/// Evaluate `Σ coeffs[i] tⁱ` exactly.
pub fn eval_poly(coeffs: &[Rational], t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = &acc * t + c;
    }
    acc
}

/// Divide by `(t − r)`; `r` must be a root.
fn deflate(coeffs: &[Rational], r: &Rational) -> Vec<Rational> {
    let deg = coeffs.len() - 1;
    let mut out = alloc::vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for i in (0..deg).rev() {
        carry = &coeffs[i + 1] + &(&carry * r);
        out[i] = carry.clone();
    }
    out
}

/// Complex roots by the Durand–Kerner iteration.
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| seed.powu(k as u32) * radius.min(1e6) * 0.5)
        .collect();
    let p = |t: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.l1_norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = p(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.l1_norm() / (1.0 + z[i].l1_norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// All roots of a polynomial with simple rational roots, found numerically,
/// snapped to nearby fractions and confirmed exactly. Fails rather than
/// approximating when some root is not rational.
pub fn rational_roots(coeffs: &[Rational]) -> Result<Vec<Rational>, RootError> {
    let mut poly: Vec<Rational> = coeffs.to_vec();
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    if poly.len() <= 1 {
        return Err(RootError::Constant);
    }
    let degree = poly.len() - 1;
    let mut roots = Vec::new();
    // zero roots first: they are exact and would upset the relative snapping
    while poly[0].is_zero() && poly.len() > 1 {
        roots.push(Rational::zero());
        poly.remove(0);
    }
    while poly.len() > 1 {
        let approx = durand_kerner(&poly.iter().map(Rational::to_f64).collect::<Vec<_>>());
        let mut hit = None;
        'search: for z in &approx {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            for max_den in [1i64, 10, 100, 1000, 100_000, 10_000_000] {
                if let Some(r) = Rational::approximate_f64(z.re, max_den) {
                    if eval_poly(&poly, &r).is_zero() {
                        hit = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match hit {
            Some(r) => {
                poly = deflate(&poly, &r);
                roots.push(r);
            }
            None => {
                return Err(RootError::Irrational {
                    degree,
                    found: roots.len(),
                })
            }
        }
    }
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_expr::{int, rat};

    #[test]
    fn finds_rational_roots() {
        // (t + 3/2)(t − 5)(t − 1/3) t
        let roots = [rat(-3, 2), int(5), rat(1, 3), int(0)];
        let mut coeffs = alloc::vec![int(1)];
        for r in &roots {
            let mut next = alloc::vec![Rational::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c.clone();
                next[i] -= c * r;
            }
            coeffs = next;
        }
        let mut expected = roots.to_vec();
        expected.sort();
        assert_eq!(rational_roots(&coeffs).unwrap(), expected);
    }

    #[test]
    fn refuses_irrational() {
        // t² − 2
        let err = rational_roots(&[int(-2), int(0), int(1)]).unwrap_err();
        assert_eq!(err, RootError::Irrational { degree: 2, found: 0 });
    }
}
