use alloc::string::String;
use alloc::vec::Vec;

use super::decompose::{Decomposition, ZERO_THRESHOLD};
use super::quotient::StructureKind;
use super::RepError;
use crate::linalg::SparseVec;
use crate::scalar_expr::{Rational, Real};
use crate::tensor_algebra::{check_torsion, pair_index, Tensor};

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentReport {
    pub label: String,
    /// Largest absolute coefficient of the component in quotient
    /// coordinates.
    pub magnitude: f64,
    /// The exact magnitude when the input was exact.
    pub exact_magnitude: Option<Rational>,
    pub zero: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    /// Hypercomplex (hsH) or quaternionic (qsH).
    pub integrable: bool,
    pub symplectic: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeReport {
    pub kind: StructureKind,
    pub n: usize,
    pub components: Vec<ComponentReport>,
    pub flags: Flags,
}

impl TypeReport {
    /// Whether the named type module is zero; merged components answer for
    /// every label they contain.
    pub fn is_zero(&self, label: &str) -> bool {
        self.components
            .iter()
            .find(|c| c.label.split('+').any(|l| l == label))
            .is_none_or(|c| c.zero)
    }

    /// `X` followed by the indices of the nonzero modules, or `X0` when the
    /// intrinsic torsion vanishes.
    pub fn type_string(&self) -> String {
        let mut idx: Vec<u32> = self
            .components
            .iter()
            .filter(|c| !c.zero)
            .flat_map(|c| c.label.split('+').filter_map(|l| l[1..].parse::<u32>().ok()))
            .collect();
        idx.sort();
        let mut s = String::from("X");
        if idx.is_empty() {
            s.push('0');
        }
        for i in idx {
            s.push_str(&alloc::format!("{i}"));
        }
        s
    }

    /// Name of the integrability flag.
    pub fn integrable_name(&self) -> &'static str {
        match self.kind {
            StructureKind::HsH => "hypercomplex",
            StructureKind::QsH => "quaternionic",
        }
    }

    fn set_flags(&mut self) {
        let z = |l: &str| self.is_zero(l);
        let integrable = match self.kind {
            StructureKind::HsH => z("X1") && z("X2") && z("X6"),
            StructureKind::QsH => z("X1") && z("X2"),
        };
        let symplectic = z("X2") && z("X3") && z("X4");
        self.flags = Flags {
            integrable,
            symplectic,
        };
    }
}

fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(Rational::abs).max().unwrap_or_else(Rational::zero)
}

/// Classify an exact torsion tensor.
pub fn classify_torsion(d: &Decomposition, t: &Tensor) -> Result<TypeReport, RepError> {
    let q = d.quotient.project_tensor(t)?;
    Ok(classify_quotient_vector(d, &q))
}

/// Classify a torsion already given in quotient coordinates.
pub fn classify_quotient_vector(d: &Decomposition, q: &SparseVec) -> TypeReport {
    let lee_zero = {
        let mut zero = true;
        for z in 0..d.lee.rows() {
            let s: Rational = q.entries().iter().map(|(c, x)| &d.lee[(z, *c)] * x).sum();
            zero &= s.is_zero();
        }
        zero
    };
    let components = d
        .components
        .iter()
        .map(|c| {
            let mag = max_abs(&c.apply(q));
            // the X4 line of an hsH structure is the Lee functional
            let zero = if d.kind() == StructureKind::HsH && c.label == "X4" {
                lee_zero
            } else {
                mag.is_zero()
            };
            ComponentReport {
                label: c.label.clone(),
                magnitude: mag.to_f64(),
                exact_magnitude: Some(mag),
                zero,
            }
        })
        .collect();
    let mut r = TypeReport {
        kind: d.kind(),
        n: d.n(),
        components,
        flags: Flags {
            integrable: false,
            symplectic: false,
        },
    };
    r.set_flags();
    r
}

/// Classify a torsion tensor with floating-point entries: components below
/// [`ZERO_THRESHOLD`] times the largest component magnitude count as zero.
pub fn classify_torsion_approx(d: &Decomposition, t: &Tensor<Real>) -> Result<TypeReport, RepError> {
    check_torsion(t)?;
    let dim = t.dim();
    let quotient = &d.quotient;
    // W-coordinates as f64, then reduce by the (exact) echelon rows
    let mut w = alloc::vec![0f64; quotient.ambient_dim()];
    for x in 0..dim {
        for y in x + 1..dim {
            for k in 0..dim {
                w[pair_index(x, y, dim) * dim + k] = t.get(&[x, y, k]).to_f64();
            }
        }
    }
    let reduced = quotient.reduce_f64(&w);
    let qv: Vec<f64> = quotient.free_columns().iter().map(|&c| reduced[c]).collect();
    let mags: Vec<f64> = d
        .components
        .iter()
        .map(|c| {
            let p = &c.projector;
            (0..p.rows())
                .map(|r| {
                    (0..p.cols())
                        .filter(|&j| qv[j] != 0.0 && !p[(r, j)].is_zero())
                        .map(|j| p[(r, j)].to_f64() * qv[j])
                        .sum::<f64>()
                        .abs()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    let scale = mags.iter().cloned().fold(0.0, f64::max);
    let lee_mag = (0..d.lee.rows())
        .map(|z| {
            (0..d.lee.cols())
                .map(|j| d.lee[(z, j)].to_f64() * qv[j])
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max);
    let is_zero = |m: f64| scale == 0.0 || m <= ZERO_THRESHOLD * scale;
    let components = d
        .components
        .iter()
        .zip(&mags)
        .map(|(c, &m)| {
            let zero = if d.kind() == StructureKind::HsH && c.label == "X4" {
                is_zero(lee_mag)
            } else {
                is_zero(m)
            };
            ComponentReport {
                label: c.label.clone(),
                magnitude: m,
                exact_magnitude: None,
                zero,
            }
        })
        .collect();
    let mut r = TypeReport {
        kind: d.kind(),
        n: d.n(),
        components,
        flags: Flags {
            integrable: false,
            symplectic: false,
        },
    };
    r.set_flags();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep_theory::isotypic_decomposition;
    use crate::tensor_algebra::{spencer_delta, EndoOneForm, Valence};

    #[test]
    fn zero_and_conformal_torsion() {
        let d = isotypic_decomposition(StructureKind::HsH, 2).unwrap();
        let zero = Tensor::zeros(8, alloc::vec![Valence::Covariant, Valence::Covariant, Valence::Contravariant]);
        let r = classify_torsion(&d, &zero).unwrap();
        assert_eq!(r.type_string(), "X0");
        assert!(r.flags.integrable && r.flags.symplectic);

        let mut xi = alloc::vec![Rational::zero(); 8];
        xi[0] = Rational::one();
        xi[5] = Rational::new(-2, 3);
        let t = spencer_delta(&EndoOneForm::pure(&xi, &d.quotient.model().identity()));
        let r = classify_torsion(&d, &t).unwrap();
        assert_eq!(r.type_string(), "X47");
        assert!(r.flags.integrable);
        assert!(!r.flags.symplectic);

        let approx = classify_torsion_approx(&d, &t.map(|x| Real::from_rational(x))).unwrap();
        assert_eq!(approx.type_string(), "X47");
    }
}
