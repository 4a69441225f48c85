//! End-to-end acceptance: one line per criterion, exact arithmetic
//! throughout. Expected values are written out here rather than read from
//! the registry, so the registry is checked too.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use shl::cache::Calibrations;
use shl::format::Input;
use shl::registry;
use shl::verify::{algebra_name, classify_entry, compare_types, Verdict};
use shl_core::adapted_connections::{
    act_on_phi0, contraction_coefficients, hhat_contract, lowered, pure_alpha1, pure_alpha2, pure_alpha3,
    pure_alpha4, round_trip_residual, w_project,
};
use shl_core::eh_model::{defining_tensors, ModelSpace};
use shl_core::frame_geometry::{
    domega_check, examples as frames, quaternionify_alpha, quaternionify_beta, CoFrame, FrameKind,
};
use shl_core::homogeneous::{examples as spaces, nomizu_torsion_curvature};
use shl_core::linalg::Matrix;
use shl_core::rep_theory::{
    act, classify_torsion, delta_kernel_dim, generating_subset, lie_algebra_basis, AlgebraKind, SparseMatrix,
    StructureKind,
};
use shl_core::tensor_algebra::{spencer_delta, EndoOneForm};
use shl_core::{Expr, Rational};

const SEED: u64 = 0x5348_4c20_6163_6365;
const SAMPLES: usize = 20;
const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            ok,
            detail: detail.into(),
        }
    }
}

fn r(i: i64) -> Rational {
    Rational::from_int(i)
}

fn random_vector(rng: &mut StdRng, dim: usize) -> Vec<Rational> {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.random_range(-3..=3)).collect();
        if v.iter().any(|x| *x != 0) {
            return v.into_iter().map(r).collect();
        }
    }
}

fn random_matrix(rng: &mut StdRng, dim: usize) -> Matrix {
    Matrix::from_fn(dim, dim, |_, _| r(rng.random_range(-2..=2)))
}

/// (key, n, type, hypercomplex, symplectic, components that must vanish)
const STATED: [(&str, usize, &str, Option<bool>, Option<bool>, &[&str]); 9] = [
    ("r12-x12", 3, "X12", None, None, &[]),
    ("r8-x123567", 2, "X123567", None, None, &[]),
    ("r8-conformal-x47", 2, "X47", Some(true), None, &[]),
    ("r8-x1567", 2, "X1567", None, Some(true), &[]),
    ("r12-pure-x3", 3, "X3", None, None, &[]),
    ("lie-triangular-x35", 3, "X35", None, None, &[]),
    ("sl4-sl2-x1234567", 3, "X1234567", None, None, &[]),
    ("quat-alpha-x17", 2, "X17", None, Some(true), &[]),
    ("quat-beta-x1235", 3, "X1235", None, None, &["X4", "X6", "X7"]),
];

fn example_types(cal: &Calibrations) -> Outcome {
    let mut failures = Vec::new();
    let mut split_only = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut moved = Vec::new();
    for (key, n, ty, hyper, sympl, vanish) in STATED {
        let Some(entry) = registry::lookup(key) else {
            failures.push(format!("{key} missing from the registry"));
            continue;
        };
        if !entry.base_offset.is_empty() {
            moved.push(key);
        }
        let start = Instant::now();
        let report = match classify_entry(entry, cal) {
            Ok(rep) => rep,
            Err(e) => {
                failures.push(format!("{key}: {e}"));
                continue;
            }
        };
        let took = start.elapsed();
        slowest = slowest.max(took);
        if took > TIME_LIMIT || report.n != n || report.kind != StructureKind::HsH {
            failures.push(format!("{key}: n = {}, {:?}", report.n, took));
        }
        if !report.components.iter().all(|c| c.exact_magnitude.is_some()) {
            failures.push(format!("{key}: classification was not exact"));
        }
        let got = report.type_string();
        match compare_types(ty, &got) {
            Verdict::Match => {}
            Verdict::SplitOnly => split_only.push(format!("{key}: stated {ty}, got {got}")),
            Verdict::Mismatch => failures.push(format!("{key}: stated {ty}, got {got}")),
        }
        if hyper.is_some_and(|h| h != report.flags.integrable) {
            failures.push(format!("{key}: hypercomplex {}", report.flags.integrable));
        }
        if sympl.is_some_and(|s| s != report.flags.symplectic) {
            failures.push(format!("{key}: symplectic {}", report.flags.symplectic));
        }
        for label in vanish {
            if !report.components.iter().any(|c| c.label == *label && c.zero) {
                failures.push(format!("{key}: {label} should vanish"));
            }
        }
    }
    let mut detail = format!("9 examples, slowest {slowest:.1?}");
    if !moved.is_empty() {
        detail.push_str(&format!("; off the origin where the chart excludes it: {}", moved.join(", ")));
    }
    if !split_only.is_empty() {
        detail.push_str(&format!("; X4/X7 split only (open question): {}", split_only.join(", ")));
    }
    if !failures.is_empty() {
        detail.push_str(&format!("; {}", failures.join("; ")));
    }
    Outcome::new(failures.is_empty(), detail)
}

fn contraction(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in [2usize, 3] {
        let m = ModelSpace::standard(n).expect("n ≥ 2");
        let n_ = n as i64;
        let k = [
            r(-8 * (2 * n_ - 1)),
            r(-8 * (n_ - 1)),
            Rational::new(16 * n_, 3),
            Rational::new(-8 * (n_ + 1), 3),
        ];
        if contraction_coefficients(n) != k {
            failures.push(format!("n = {n}: library constants {:?}", contraction_coefficients(n)));
        }
        for (family, ka) in k.iter().enumerate() {
            let mut done = 0;
            while done < SAMPLES {
                let xi = random_vector(rng, m.dim());
                let rm = random_matrix(rng, m.dim());
                let b = rng.random_range(0..3);
                let alpha = match family {
                    0 => pure_alpha1(&m, &xi),
                    1 => pure_alpha2(&m, &xi, &rm),
                    2 => pure_alpha3(&m, &xi, &rm, b),
                    _ => pure_alpha4(&m, &xi, &rm, b),
                };
                let low = lowered(&m, &alpha);
                if low.is_zero() {
                    continue;
                }
                done += 1;
                let c = hhat_contract(&m, &act_on_phi0(&m, &alpha)).expect("Φ₀ image is symmetric");
                if c != low.scale(ka) {
                    failures.push(format!("n = {n}, α{}", family + 1));
                }
                checked += 1;
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{checked} pure elements, all basis triples; {}", summary(&failures)),
    )
}

fn summary(failures: &[String]) -> String {
    if failures.is_empty() {
        "no failures".into()
    } else {
        failures.join(", ")
    }
}

fn splitting(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    for n in [2usize, 3] {
        let m = ModelSpace::standard(n).expect("n ≥ 2");
        let dim = m.dim();
        for i in 0..SAMPLES {
            let raw = EndoOneForm::from_fn(dim, |_, _, _| r(rng.random_range(-2..=2)));
            // α·Φ₀ only depends on the part of α outside so*(2n) ⊕ sp(1);
            // w₁ + … + w₄ is that part
            let alpha = w_project(&m, &raw).sum();
            let theta = act_on_phi0(&m, &alpha);
            if theta != act_on_phi0(&m, &raw) {
                failures.push(format!("n = {n} sample {i}: w-sum changes α·Φ₀"));
            }
            match round_trip_residual(&m, &theta) {
                Ok(res) if res.is_zero() => {}
                Ok(res) => failures.push(format!("n = {n} sample {i}: residual {}", res.max_abs())),
                Err(e) => failures.push(format!("n = {n} sample {i}: {e}")),
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{} samples, residual exactly zero; {}", 2 * SAMPLES, summary(&failures)),
    )
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn dimensions(cal: &Calibrations) -> Outcome {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for n in [2usize, 3] {
        let so = lie_algebra_basis(AlgebraKind::SoStar, n).expect("so*");
        if so.dim() != n * (2 * n - 1) {
            failures.push(format!("dim so*({}) = {}", 2 * n, so.dim()));
        }
        for (kind, expect) in [
            (AlgebraKind::SoStar, 0),
            (AlgebraKind::SoStarPlusSp1, 0),
            (AlgebraKind::GlNH, 0),
            (AlgebraKind::SpOmega, binom(4 * n + 2, 3)),
        ] {
            let a = lie_algebra_basis(kind, n).expect("algebra");
            let k = delta_kernel_dim(&a.basis);
            seen.push(format!("{}@{n}:{k}", algebra_name(kind)));
            if k != expect {
                failures.push(format!("ker δ on V*⊗{} at n = {n}: {k}, expected {expect}", algebra_name(kind)));
            }
        }
    }
    for (kind, expect) in [(StructureKind::QsH, 152), (StructureKind::HsH, 176)] {
        match cal.get(kind, 2) {
            Ok(d) if d.quotient.dim() == expect => seen.push(format!("{kind}@2:{expect}")),
            Ok(d) => failures.push(format!("{kind} quotient at n = 2: {}", d.quotient.dim())),
            Err(e) => failures.push(e.to_string()),
        }
    }
    Outcome::new(failures.is_empty(), format!("{}; {}", seen.join(" "), summary(&failures)))
}

fn projectors(cal: &Calibrations) -> Outcome {
    let mut failures = Vec::new();
    for n in [2usize, 3] {
        for kind in [StructureKind::HsH, StructureKind::QsH] {
            let d = match cal.get(kind, n) {
                Ok(d) => d,
                Err(e) => {
                    failures.push(e.to_string());
                    continue;
                }
            };
            let acts: Vec<SparseMatrix> = d.quotient.actions().cloned().collect();
            let gens: Vec<SparseMatrix> = if n == 2 {
                acts
            } else {
                // a bracket-generating subset of so*(2n), plus all of sp(1)
                let k = d.quotient.so_star().dim();
                let mut g: Vec<SparseMatrix> = generating_subset(d.quotient.so_star())
                    .into_iter()
                    .map(|i| acts[i].clone())
                    .collect();
                g.extend(acts[k..].iter().cloned());
                g
            };
            let c = d.check_projectors(&gens);
            if !c.all() {
                failures.push(format!("{kind} n = {n}: {c:?}"));
            }
        }
    }
    Outcome::new(failures.is_empty(), format!("hsH and qsH at n = 2, 3; {}", summary(&failures)))
}

fn gauge(cal: &Calibrations, rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    for kind in [StructureKind::HsH, StructureKind::QsH] {
        let d = match cal.get(kind, 2) {
            Ok(d) => d,
            Err(e) => return Outcome::new(false, e.to_string()),
        };
        let mut basis: Vec<Matrix> = d.quotient.so_star().basis.clone();
        if kind == StructureKind::QsH {
            basis.extend(d.quotient.sp1().basis.iter().cloned());
        }
        for i in 0..SAMPLES {
            let t = spencer_delta(&EndoOneForm::from_fn(8, |_, _, _| r(rng.random_range(-2..=2))));
            let mats: Vec<Matrix> = (0..8)
                .map(|_| {
                    basis.iter().fold(Matrix::zeros(8, 8), |acc, b| {
                        acc.add(&b.scale(&r(rng.random_range(-3..=3))))
                    })
                })
                .collect();
            let shifted = t.add(&spencer_delta(&EndoOneForm::from_matrices(&mats))).expect("same shape");
            let (r0, r1) = (classify_torsion(&d, &t), classify_torsion(&d, &shifted));
            let same = match (&r0, &r1) {
                (Ok(a), Ok(b)) => {
                    a.type_string() == b.type_string()
                        && a.components
                            .iter()
                            .zip(&b.components)
                            .all(|(x, y)| x.exact_magnitude == y.exact_magnitude && x.exact_magnitude.is_some())
                }
                _ => false,
            };
            if !same {
                failures.push(format!("{kind} pair {i}"));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{} pairs per kind at n = 2; {}", SAMPLES, summary(&failures)),
    )
}

/// ℝ⁴ symplectic coframe with `θ⁴ = dx₄ + x₁dx₃`: pairing θ¹∧θ³ + θ²∧θ⁴
/// gives `dω = dx₁ ∧ dx₂ ∧ dx₃ ≠ 0`.
fn non_closed_symplectic() -> CoFrame {
    let dim = 4;
    let mut forms: Vec<Vec<Expr>> = (0..dim)
        .map(|i| (0..dim).map(|j| Expr::int(i64::from(i == j))).collect())
        .collect();
    forms[3][2] = Expr::var(1);
    CoFrame::new(FrameKind::Symplectic, forms).expect("valid coframe")
}

fn is_closed(cf: &CoFrame) -> bool {
    cf.induced_omega().d().is_identically_zero()
}

fn domega() -> Outcome {
    let mut failures = Vec::new();
    let mut frames_checked = 0;
    for e in registry::ENTRIES.iter().filter(|e| e.is_frame()) {
        let Input::CoFrame(cf) = e.input() else { continue };
        frames_checked += 1;
        match domega_check(&cf, &e.base_point(cf.dim())) {
            Ok(c) if c.exact && c.holds() => {}
            Ok(c) => failures.push(format!("{}: residual {}", e.key, c.max_residual)),
            Err(err) => failures.push(format!("{}: {err}", e.key)),
        }
    }
    // dω_ℍ = 0 exactly when dω = 0
    let cases: [(&str, CoFrame, bool); 4] = [
        ("α affine-line-group", frames::affine_line_group(), false),
        ("α non-closed ℝ⁴", non_closed_symplectic(), false),
        ("α unipotent-group", frames::unipotent_group(), false),
        ("β unipotent-group", frames::unipotent_group(), true),
    ];
    let mut closed_inputs = 0;
    let mut open_inputs = 0;
    for (name, base, beta) in cases {
        let q = if beta { quaternionify_beta(&base) } else { quaternionify_alpha(&base) };
        match q {
            Ok(q) => {
                let (before, after) = (is_closed(&base), is_closed(&q));
                if before {
                    closed_inputs += 1;
                } else {
                    open_inputs += 1;
                }
                if before != after {
                    failures.push(format!("{name}: dω closed {before}, dω_ℍ closed {after}"));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if closed_inputs == 0 || open_inputs == 0 {
        failures.push("closedness equivalence needs both closed and non-closed inputs".into());
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{frames_checked} registry coframes; quaternionification of {closed_inputs} closed and {open_inputs} non-closed inputs; {}",
            summary(&failures)
        ),
    )
}

fn stabilizers() -> Outcome {
    let mut failures = Vec::new();
    for n in [2usize, 3] {
        let m = ModelSpace::standard(n).expect("n ≥ 2");
        let d = defining_tensors(&m);
        let g = lie_algebra_basis(AlgebraKind::SoStarPlusSp1, n).expect("algebra");
        for (i, xi) in g.basis.iter().enumerate() {
            if !act(xi, &d.phi0).is_zero() {
                failures.push(format!("n = {n}: ξ{i}·Φ₀ ≠ 0"));
            }
            if !act(xi, &d.h0).is_zero() {
                failures.push(format!("n = {n}: ξ{i}·h₀ ≠ 0"));
            }
        }
        let sp = lie_algebra_basis(AlgebraKind::SpOmega, n).expect("algebra");
        let omega = m.omega_tensor();
        for (i, xi) in sp.basis.iter().enumerate() {
            if !act(xi, &omega).is_zero() {
                failures.push(format!("n = {n}: ξ{i}·ω₀ ≠ 0 in sp(ω₀)"));
            }
        }
    }
    Outcome::new(failures.is_empty(), format!("n = 2, 3; {}", summary(&failures)))
}

fn sl4_display() -> Outcome {
    let hd = match spaces::sl4_sl2() {
        Ok(hd) => hd,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    let t = nomizu_torsion_curvature(&hd).torsion;
    let diff = spaces::sl4_sl2_display().diff(&t);
    let report = diff.report();
    for line in report.lines().skip(1) {
        println!("    {line}");
    }
    Outcome::new(
        diff.compared == 12 * 66 && diff.defects_only(),
        report.lines().next().unwrap_or_default().to_string(),
    )
}

fn main() {
    // `cargo test -- --list` and filtered runs expect a harness; this target
    // has one test, run it unless a filter excludes it
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    if let Some(filter) = args.iter().find(|a| !a.starts_with('-')) {
        if !"acceptance".contains(filter.as_str()) {
            return;
        }
    }

    let cal = Calibrations::with_dir(None);
    let mut rng = StdRng::seed_from_u64(SEED);
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome + '_>)> = vec![
        ("example types", Box::new(|| example_types(&cal))),
        ("contraction coefficients", Box::new(|| contraction(&mut StdRng::seed_from_u64(SEED ^ 2)))),
        ("splitting round trip", Box::new(|| splitting(&mut StdRng::seed_from_u64(SEED ^ 3)))),
        ("structural dimensions", Box::new(|| dimensions(&cal))),
        ("projector algebra", Box::new(|| projectors(&cal))),
        ("gauge invariance", Box::new(|| gauge(&cal, &mut rng))),
        ("dω consistency", Box::new(domega)),
        ("infinitesimal stabilizers", Box::new(stabilizers)),
        ("Sl(4,ℝ)/Sl(2,ℝ) display", Box::new(sl4_display)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = run();
        println!(
            "{} criterion {}: {name} [{:.1?}] {}",
            if out.ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed(),
            out.detail
        );
        if !out.ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("acceptance failed: criteria {failed:?}");
        std::process::exit(1);
    }
}
