//! Self-checks run by `shl verify`.

use shl_core::eh_model::{defining_tensors, ModelSpace};
use shl_core::frame_geometry::{classify_frame_at, cotangent_model, domega_check, quaternionify_alpha, CoFrame};
use shl_core::homogeneous::{classify_homogeneous, examples as spaces, nomizu_torsion_curvature};
use shl_core::rep_theory::{
    act, delta_kernel_dim, generating_subset, lie_algebra_basis, AlgebraKind, SparseMatrix, StructureKind, TypeReport,
};

use crate::cache::Calibrations;
use crate::format::Input;
use crate::registry::{Entry, ENTRIES};

/// How an observed type compares with the stated one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    /// The types differ only in the `X4`/`X7` split, whose separation by
    /// the Lee functional is a convention question rather than an error.
    SplitOnly,
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: if ok { Verdict::Match } else { Verdict::Mismatch },
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Mismatch
    }

    pub fn line(&self) -> String {
        let tag = match self.verdict {
            Verdict::Match => "PASS",
            Verdict::SplitOnly => "PASS*",
            Verdict::Mismatch => "FAIL",
        };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

fn indices(type_string: &str) -> Vec<char> {
    type_string.trim_start_matches('X').chars().filter(|c| *c != '0').collect()
}

/// Compare type strings; differences confined to `{4, 7}` are `SplitOnly`.
pub fn compare_types(expected: &str, got: &str) -> Verdict {
    if expected == got {
        return Verdict::Match;
    }
    let (a, b) = (indices(expected), indices(got));
    let differ: Vec<char> = a
        .iter()
        .filter(|c| !b.contains(c))
        .chain(b.iter().filter(|c| !a.contains(c)))
        .copied()
        .collect();
    if differ.iter().all(|c| *c == '4' || *c == '7') {
        Verdict::SplitOnly
    } else {
        Verdict::Mismatch
    }
}

/// Classify a registry entry at its base point.
pub fn classify_entry(entry: &Entry, cal: &Calibrations) -> Result<TypeReport, String> {
    let d = cal
        .get(entry.expected.kind, entry.expected.n)
        .map_err(|e| e.to_string())?;
    match entry.input() {
        Input::CoFrame(cf) => {
            classify_frame_at(&cf, &entry.base_point(cf.dim()), &d).map_err(|e| e.to_string())
        }
        Input::Homogeneous(hd) => classify_homogeneous(&hd, &d).map_err(|e| e.to_string()),
    }
}

pub fn check_entry(entry: &Entry, cal: &Calibrations) -> Check {
    let name = format!("registry {}", entry.key);
    let r = match classify_entry(entry, cal) {
        Ok(r) => r,
        Err(e) => return Check::new(name, false, e),
    };
    let got = r.type_string();
    let mut verdict = compare_types(entry.expected.type_string, &got);
    let mut detail = format!("expected {}, got {got}", entry.expected.type_string);
    if let Some(i) = entry.expected.integrable {
        detail.push_str(&format!(", {} {}", r.integrable_name(), r.flags.integrable));
        if i != r.flags.integrable {
            verdict = Verdict::Mismatch;
        }
    }
    if let Some(s) = entry.expected.symplectic {
        detail.push_str(&format!(", symplectic {}", r.flags.symplectic));
        if s != r.flags.symplectic {
            verdict = Verdict::Mismatch;
        }
    }
    Check { name, verdict, detail }
}

/// Every registry entry; calibrations are shared, entries classified on
/// worker threads, results reported in registry order.
pub fn registry_checks(cal: &Calibrations, entries: &[&Entry]) -> Vec<Check> {
    std::thread::scope(|s| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| s.spawn(move || check_entry(e, cal)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Check::new("registry", false, "worker panicked")))
            .collect()
    })
}

fn domega_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for e in ENTRIES.iter().filter(|e| e.is_frame()) {
        let Input::CoFrame(cf) = e.input() else { continue };
        let p = e.base_point(cf.dim());
        let ok = domega_check(&cf, &p).map(|c| c.exact && c.holds());
        out.push(Check::new(
            format!("dω = π_ω(T) for {}", e.key),
            matches!(ok, Ok(true)),
            match ok {
                Ok(_) => "exact at the base point".to_string(),
                Err(err) => err.to_string(),
            },
        ));
    }
    // quaternionification keeps ω closed for a symplectic frame
    let base = shl_core::frame_geometry::examples::affine_line_group();
    let q: Result<CoFrame, _> = quaternionify_alpha(&base);
    let closed = q.map(|q| q.induced_omega().d().is_identically_zero());
    out.push(Check::new(
        "α-quaternionification of a symplectic frame has closed ω",
        matches!(closed, Ok(true)),
        "",
    ));
    out
}

fn structural_checks(n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let so = lie_algebra_basis(AlgebraKind::SoStar, n);
    let Ok(so) = so else {
        return vec![Check::new(format!("algebras at n = {n}"), false, "construction failed")];
    };
    out.push(Check::new(
        format!("dim so*(2n) = n(2n−1) at n = {n}"),
        so.dim() == n * (2 * n - 1),
        format!("{}", so.dim()),
    ));
    for (kind, expect) in [
        (AlgebraKind::SoStar, 0),
        (AlgebraKind::SoStarPlusSp1, 0),
        (AlgebraKind::GlNH, 0),
        (AlgebraKind::SpOmega, binom(4 * n + 2, 3)),
    ] {
        let Ok(a) = lie_algebra_basis(kind, n) else { continue };
        let k = delta_kernel_dim(&a.basis);
        out.push(Check::new(
            format!("dim ker δ on V*⊗{} at n = {n}", algebra_name(kind)),
            k == expect,
            format!("{k}, expected {expect}"),
        ));
    }
    // stabilizers
    let m = ModelSpace::standard(n).expect("n ≥ 2");
    let d = defining_tensors(&m);
    let g = lie_algebra_basis(AlgebraKind::SoStarPlusSp1, n).expect("algebra");
    let ok = g.basis.iter().all(|xi| act(xi, &d.phi0).is_zero() && act(xi, &d.h0).is_zero());
    out.push(Check::new(format!("so*(2n)⊕sp(1) fixes Φ₀ and h₀ at n = {n}"), ok, ""));
    let sp = lie_algebra_basis(AlgebraKind::SpOmega, n).expect("algebra");
    let ok = sp.basis.iter().all(|xi| act(xi, &m.omega_tensor()).is_zero());
    out.push(Check::new(format!("sp(ω₀) fixes ω₀ at n = {n}"), ok, ""));
    out
}

/// Conventional name of a matrix algebra, for check labels.
pub fn algebra_name(kind: AlgebraKind) -> &'static str {
    match kind {
        AlgebraKind::SoStar => "so*(2n)",
        AlgebraKind::SoStarPlusSp1 => "so*(2n)⊕sp(1)",
        AlgebraKind::GlNH => "gl(n,ℍ)",
        AlgebraKind::SpOmega => "sp(ω₀)",
        AlgebraKind::Sp1 => "sp(1)",
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn projector_checks(cal: &Calibrations, n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for kind in [StructureKind::HsH, StructureKind::QsH] {
        let name = format!("projector algebra {kind} n = {n}");
        match cal.get(kind, n) {
            Ok(d) => {
                let acts: Vec<SparseMatrix> = d.quotient.actions().cloned().collect();
                let gens = if n == 2 {
                    acts
                } else {
                    // commuting with a bracket-generating subset of so*(2n)
                    // and all of sp(1) is commuting with the whole action
                    let k = d.quotient.so_star().dim();
                    let mut g: Vec<SparseMatrix> = generating_subset(d.quotient.so_star())
                        .into_iter()
                        .map(|i| acts[i].clone())
                        .collect();
                    g.extend(acts[k..].iter().cloned());
                    g
                };
                let c = d.check_projectors(&gens);
                out.push(Check::new(name, c.all(), format!("{c:?}")));
                if n == 2 {
                    let expect = if kind == StructureKind::HsH { 176 } else { 152 };
                    out.push(Check::new(
                        format!("quotient dimension {kind} n = 2"),
                        d.quotient.dim() == expect,
                        format!("{}, expected {expect}", d.quotient.dim()),
                    ));
                }
            }
            Err(e) => out.push(Check::new(name, false, e.to_string())),
        }
    }
    out
}

fn homogeneous_checks() -> Vec<Check> {
    let mut out = Vec::new();
    match spaces::sl4_sl2() {
        Ok(hd) => {
            let t = nomizu_torsion_curvature(&hd).torsion;
            let diff = spaces::sl4_sl2_display().diff(&t);
            out.push(Check::new(
                "Sl(4,ℝ)/Sl(2,ℝ) torsion against the printed display",
                diff.defects_only(),
                diff.report().lines().next().unwrap_or_default().to_string(),
            ));
        }
        Err(e) => out.push(Check::new("Sl(4,ℝ)/Sl(2,ℝ) data", false, e.to_string())),
    }
    let c = (1..=3).all(|n| cotangent_model(n).check().all_hold(n));
    out.push(Check::new("linear model on T*U for n = 1, 2, 3", c, ""));
    out
}

/// The invariant suites, quickest first.
pub fn invariant_checks(cal: &Calibrations) -> Vec<Check> {
    let mut out = structural_checks(2);
    out.extend(structural_checks(3));
    out.extend(projector_checks(cal, 2));
    out.extend(projector_checks(cal, 3));
    out.extend(domega_checks());
    out.extend(homogeneous_checks());
    out
}
