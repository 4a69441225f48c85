use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::scalar_expr::Rational;
use crate::tensor_algebra::Tensor;

/// Where a transcribed term sits in a printed display.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DisplayRegion {
    /// Unambiguous typesetting.
    Clean,
    /// Inside a parenthesis that is never closed; the coefficient in front
    /// of it was applied to every term up to the end of the component.
    UnbalancedParenthesis,
    /// Reassembled from a fragment split across two components.
    DanglingFragment,
}

/// One printed term `coeff · aᵢ ∧ bⱼ` in output component `component`
/// (all indices 0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct DisplayTerm {
    pub component: usize,
    pub coeff: Rational,
    pub a: usize,
    pub b: usize,
    pub region: DisplayRegion,
}

/// A printed torsion `T(a, b) = (t₁, …, t_d)` with `tₖ = Σ c·aᵢ∧bⱼ`,
/// read with `(aᵢ∧bⱼ)(a, b) = aᵢbⱼ − aⱼbᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionDisplay {
    pub dim: usize,
    pub terms: Vec<DisplayTerm>,
}

/// A coefficient on which the computation and the display disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct DisplayMismatch {
    pub component: usize,
    /// `i < j`: the coefficient of `aᵢ ∧ bⱼ` after collecting.
    pub pair: (usize, usize),
    pub computed: Rational,
    pub displayed: Rational,
    /// Regions of the display terms contributing to this coefficient
    /// (empty when the display has no such term).
    pub regions: Vec<DisplayRegion>,
}

impl DisplayMismatch {
    /// Whether the disagreement touches a known typesetting defect.
    pub fn in_defect(&self) -> bool {
        self.regions.iter().any(|r| *r != DisplayRegion::Clean)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DisplayDiff {
    /// Number of collected coefficients compared (all pairs, all components).
    pub compared: usize,
    pub mismatches: Vec<DisplayMismatch>,
}

impl DisplayDiff {
    pub fn is_exact_match(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Every mismatch lies in a region marked as defective.
    pub fn defects_only(&self) -> bool {
        self.mismatches.iter().all(DisplayMismatch::in_defect)
    }

    /// Plain-text report, one line per mismatch, 1-based indices as printed.
    pub fn report(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} coefficients compared, {} mismatches ({} outside known defects)",
            self.compared,
            self.mismatches.len(),
            self.mismatches.iter().filter(|m| !m.in_defect()).count()
        );
        for m in &self.mismatches {
            let _ = writeln!(
                s,
                "t{}: a{}∧b{}: computed {}, displayed {}{}",
                m.component + 1,
                m.pair.0 + 1,
                m.pair.1 + 1,
                m.computed,
                m.displayed,
                if m.in_defect() { " [known defect]" } else { "" }
            );
        }
        s
    }
}

impl TorsionDisplay {
    /// The display as a torsion tensor (slots `X, Y, out`).
    pub fn to_tensor(&self) -> Tensor {
        let (coeffs, _) = self.collect();
        let mut t = super::examples::torsion_shape(self.dim);
        for ((k, i, j), c) in coeffs {
            t.set(&[i, j, k], c.clone());
            t.set(&[j, i, k], -c);
        }
        t
    }

    #[allow(clippy::type_complexity)]
    fn collect(
        &self,
    ) -> (
        BTreeMap<(usize, usize, usize), Rational>,
        BTreeMap<(usize, usize, usize), Vec<DisplayRegion>>,
    ) {
        let mut coeffs: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        let mut regions: BTreeMap<(usize, usize, usize), Vec<DisplayRegion>> = BTreeMap::new();
        for t in &self.terms {
            if t.a == t.b {
                continue;
            }
            let (key, c) = if t.a < t.b {
                ((t.component, t.a, t.b), t.coeff.clone())
            } else {
                ((t.component, t.b, t.a), -t.coeff.clone())
            };
            let e = coeffs.entry(key).or_insert_with(Rational::zero);
            *e = &*e + &c;
            let r = regions.entry(key).or_default();
            if !r.contains(&t.region) {
                r.push(t.region);
            }
        }
        (coeffs, regions)
    }

    /// Compare with a computed torsion term by term.
    pub fn diff(&self, torsion: &Tensor) -> DisplayDiff {
        let (coeffs, regions) = self.collect();
        let d = self.dim;
        let mut mismatches = Vec::new();
        let mut compared = 0;
        for k in 0..d {
            for i in 0..d {
                for j in i + 1..d {
                    compared += 1;
                    let computed = torsion.get(&[i, j, k]).clone();
                    let displayed = coeffs.get(&(k, i, j)).cloned().unwrap_or_else(Rational::zero);
                    if computed != displayed {
                        mismatches.push(DisplayMismatch {
                            component: k,
                            pair: (i, j),
                            computed,
                            displayed,
                            regions: regions.get(&(k, i, j)).cloned().unwrap_or_default(),
                        });
                    }
                }
            }
        }
        DisplayDiff { compared, mismatches }
    }
}
