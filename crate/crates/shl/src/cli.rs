//! The `shl` command line.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shl_core::frame_geometry::{
    classify_frame_at, coframe_torsion, examples as frames, quaternionify_alpha, quaternionify_beta, CoFrame,
    FrameKind, Sampled,
};
use shl_core::homogeneous::{classify_homogeneous, nomizu_torsion_curvature, HomogeneousData};
use shl_core::rep_theory::StructureKind;
use shl_core::Rational;

use crate::cache::Calibrations;
use crate::format::{self, Input};
use crate::registry::{self, ENTRIES};
use crate::report;
use crate::verify::{self, Check};

/// Successful run.
pub const EXIT_OK: u8 = 0;
/// Bad input: unreadable, malformed, or failing validation.
pub const EXIT_INVALID: u8 = 1;
/// `verify` found a classification that disagrees with the registry.
pub const EXIT_MISMATCH: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "shl", version, about = "Intrinsic-torsion types of skew-Hermitian structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the flat frame connection of a coframe at a point.
    ClassifyFrame {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, value_enum, default_value = "hsH")]
        kind: Kind,
    },
    /// Classify the invariant structure of reductive homogeneous data.
    ClassifyHomogeneous {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, value_enum, default_value = "hsH")]
        kind: Kind,
    },
    /// Quaternionify a symplectic (α) or unitary (β) coframe.
    Quaternionify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Write the coframe here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print torsion (and, for homogeneous data, curvature) components.
    Tensors {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        point: PointArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check registry entries against their stated types, and run the
    /// invariant suites.
    Verify {
        /// Every registry entry and every invariant suite.
        #[arg(long, conflicts_with = "example")]
        all: bool,
        /// A single registry entry.
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// List the built-in examples.
    List,
    /// Write a built-in example in its file format.
    Export {
        #[arg(long)]
        example: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Built-in example key (see `shl list`).
    #[arg(long)]
    pub example: Option<String>,
    /// Input file in the coframe or homogeneous JSON format.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PointArgs {
    /// `origin` or comma-separated rationals, e.g. `1,0,1/2,…`. Defaults to
    /// the example's base point, or the origin for files.
    #[arg(long)]
    pub point: Option<String>,
    /// Refuse points at which some coefficient is only known approximately.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    pub json: bool,
    /// Write the JSON report to a file.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "hsH", alias = "hsh")]
    HsH,
    #[value(name = "qsH", alias = "qsh")]
    QsH,
}

impl From<Kind> for StructureKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::HsH => StructureKind::HsH,
            Kind::QsH => StructureKind::QsH,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Alpha,
    Beta,
}

/// Inputs for quaternionification that are not classified themselves.
pub const BASES: [(&str, &str, fn() -> CoFrame); 2] = [
    (
        "affine-line-group",
        "2-dimensional non-abelian group, symplectic frame",
        frames::affine_line_group,
    ),
    (
        "unipotent-group",
        "6-dimensional unipotent group, unitary frame",
        frames::unipotent_group,
    ),
];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown example `{0}` (see `shl list`)")]
    UnknownExample(String),
    #[error(transparent)]
    Format(#[from] format::FormatError),
    #[error("expected a coframe input, got homogeneous data")]
    NotCoFrame,
    #[error("expected homogeneous data, got a coframe")]
    NotHomogeneous,
    #[error("bad point `{text}`: {message}")]
    Point { text: String, message: String },
    #[error("point has {got} coordinates, the chart has dimension {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("the coefficients are only known approximately at this point (drop --exact to classify with the 1e-9 threshold)")]
    Inexact,
    #[error("{0}")]
    Compute(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

struct Loaded {
    label: String,
    input: Input,
    base_point: Option<Vec<Rational>>,
}

fn load(source: &SourceArgs) -> Result<Loaded, CliError> {
    if let Some(path) = &source.input {
        return Ok(Loaded {
            label: path.display().to_string(),
            input: format::read_input(path)?,
            base_point: None,
        });
    }
    let key = source.example.as_deref().unwrap_or_default();
    if let Some(e) = registry::lookup(key) {
        let input = e.input();
        let base_point = match &input {
            Input::CoFrame(cf) => Some(e.base_point(cf.dim())),
            Input::Homogeneous(_) => None,
        };
        return Ok(Loaded {
            label: key.into(),
            input,
            base_point,
        });
    }
    if let Some((_, _, f)) = BASES.iter().find(|(k, _, _)| *k == key) {
        return Ok(Loaded {
            label: key.into(),
            input: Input::CoFrame(f()),
            base_point: None,
        });
    }
    Err(CliError::UnknownExample(key.into()))
}

pub fn parse_point(text: &str, dim: usize) -> Result<Vec<Rational>, CliError> {
    let text = text.trim();
    if text == "origin" {
        return Ok(vec![Rational::zero(); dim]);
    }
    let coords = text
        .split(',')
        .map(|s| s.trim().parse::<Rational>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Point {
            text: text.into(),
            message: e.to_string(),
        })?;
    if coords.len() != dim {
        return Err(CliError::PointDimension {
            expected: dim,
            got: coords.len(),
        });
    }
    Ok(coords)
}

fn resolve_point(args: &PointArgs, loaded: &Loaded, dim: usize) -> Result<Vec<Rational>, CliError> {
    match &args.point {
        Some(text) => parse_point(text, dim),
        None => Ok(loaded
            .base_point
            .clone()
            .unwrap_or_else(|| vec![Rational::zero(); dim])),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// `text` to stdout, or JSON to stdout / a file.
fn emit(out: &OutputArgs, json: impl FnOnce() -> String, text: impl FnOnce() -> String) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            write_file(path, &json())?;
            if out.json {
                return Ok(());
            }
            print!("{}", text());
        }
        None if out.json => print!("{}", json()),
        None => print!("{}", text()),
    }
    Ok(())
}

fn coframe(loaded: &Loaded) -> Result<&CoFrame, CliError> {
    match &loaded.input {
        Input::CoFrame(cf) => Ok(cf),
        Input::Homogeneous(_) => Err(CliError::NotCoFrame),
    }
}

fn homogeneous(loaded: &Loaded) -> Result<&HomogeneousData, CliError> {
    match &loaded.input {
        Input::Homogeneous(hd) => Ok(hd),
        Input::CoFrame(_) => Err(CliError::NotHomogeneous),
    }
}

fn classify_frame_cmd(
    cal: &Calibrations,
    source: &SourceArgs,
    point: &PointArgs,
    out: &OutputArgs,
    kind: Kind,
) -> Result<(), CliError> {
    let loaded = load(source)?;
    let cf = coframe(&loaded)?;
    let p = resolve_point(point, &loaded, cf.dim())?;
    if point.exact && !coframe_torsion(cf, &p).map_err(|e| CliError::Compute(e.to_string()))?.is_exact() {
        return Err(CliError::Inexact);
    }
    if cf.kind() != FrameKind::SkewHermitian || cf.dim() < 8 {
        return Err(CliError::Compute(format!(
            "classification needs a skew-Hermitian coframe of dimension 4n with n ≥ 2, got a {} coframe of dimension {}",
            cf.kind(),
            cf.dim()
        )));
    }
    let d = cal.get(kind.into(), cf.n()).map_err(|e| CliError::Compute(e.to_string()))?;
    let r = classify_frame_at(cf, &p, &d).map_err(|e| CliError::Compute(e.to_string()))?;
    emit(
        out,
        || report::classification_json(&loaded.label, Some(&p), &r),
        || report::classification_text(&loaded.label, Some(&p), &r),
    )
}

fn classify_homogeneous_cmd(cal: &Calibrations, source: &SourceArgs, out: &OutputArgs, kind: Kind) -> Result<(), CliError> {
    let loaded = load(source)?;
    let hd = homogeneous(&loaded)?;
    let d = cal.get(kind.into(), hd.n()).map_err(|e| CliError::Compute(e.to_string()))?;
    let r = classify_homogeneous(hd, &d).map_err(|e| CliError::Compute(e.to_string()))?;
    emit(
        out,
        || report::classification_json(&loaded.label, None, &r),
        || report::classification_text(&loaded.label, None, &r),
    )
}

fn quaternionify_cmd(source: &SourceArgs, mode: Mode, output: Option<&Path>) -> Result<(), CliError> {
    let loaded = load(source)?;
    let cf = coframe(&loaded)?;
    let q = match mode {
        Mode::Alpha => quaternionify_alpha(cf),
        Mode::Beta => quaternionify_beta(cf),
    }
    .map_err(|e| CliError::Compute(e.to_string()))?;
    let text = format::emit_coframe(&q);
    match output {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(serde::Serialize)]
struct TensorsJson {
    input: String,
    point: Option<Vec<String>>,
    torsion: report::SparseTensorJson,
    curvature: Option<report::SparseTensorJson>,
}

fn tensors_cmd(source: &SourceArgs, point: &PointArgs, out: &OutputArgs) -> Result<(), CliError> {
    let loaded = load(source)?;
    let doc = match &loaded.input {
        Input::CoFrame(cf) => {
            let p = resolve_point(point, &loaded, cf.dim())?;
            let t = coframe_torsion(cf, &p).map_err(|e| CliError::Compute(e.to_string()))?;
            if point.exact && !t.is_exact() {
                return Err(CliError::Inexact);
            }
            TensorsJson {
                input: loaded.label.clone(),
                point: Some(p.iter().map(report::pq).collect()),
                torsion: report::sparse_sampled(&t.torsion, vec!["X", "Y", "out"]),
                curvature: None,
            }
        }
        Input::Homogeneous(hd) => {
            let nt = nomizu_torsion_curvature(hd);
            TensorsJson {
                input: loaded.label.clone(),
                point: None,
                torsion: report::sparse_sampled(&Sampled::Exact(nt.torsion), vec!["X", "Y", "out"]),
                curvature: Some(report::sparse_exact(&nt.curvature, vec!["X", "Y", "Z", "out"], true)),
            }
        }
    };
    emit(
        out,
        || report::to_json(&doc),
        || {
            let mut s = format!("{}\n", doc.input);
            s.push_str(&report::sparse_text("torsion", &doc.torsion));
            if let Some(c) = &doc.curvature {
                s.push_str(&report::sparse_text("curvature", c));
            }
            s
        },
    )
}

#[derive(serde::Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    verdict: &'static str,
    detail: &'a str,
}

fn verify_cmd(cal: &Calibrations, all: bool, example: Option<&str>, json: bool) -> Result<u8, CliError> {
    let checks: Vec<Check> = match example {
        Some(key) => {
            let e = registry::lookup(key).ok_or_else(|| CliError::UnknownExample(key.into()))?;
            verify::registry_checks(cal, &[e])
        }
        None => {
            let _ = all;
            let entries: Vec<_> = ENTRIES.iter().collect();
            let mut c = verify::registry_checks(cal, &entries);
            c.extend(verify::invariant_checks(cal));
            c
        }
    };
    if json {
        let rows: Vec<CheckJson> = checks
            .iter()
            .map(|c| CheckJson {
                name: &c.name,
                verdict: match c.verdict {
                    verify::Verdict::Match => "pass",
                    verify::Verdict::SplitOnly => "split_only",
                    verify::Verdict::Mismatch => "fail",
                },
                detail: &c.detail,
            })
            .collect();
        print!("{}", report::to_json(&rows));
    } else {
        for c in &checks {
            println!("{}", c.line());
        }
        let failed = checks.iter().filter(|c| !c.passed()).count();
        println!("{} checks, {failed} failed", checks.len());
    }
    Ok(if checks.iter().all(Check::passed) { EXIT_OK } else { EXIT_MISMATCH })
}

fn list_cmd() {
    for e in &ENTRIES {
        let kind = if e.is_frame() { "coframe" } else { "homogeneous" };
        println!("{:<20} {:<12} {:<9} {}", e.key, kind, e.expected.type_string, e.description);
    }
    for (key, description, _) in &BASES {
        println!("{key:<20} {:<12} {:<9} {description}", "coframe", "-");
    }
}

fn export_cmd(key: &str, output: Option<&Path>) -> Result<(), CliError> {
    let loaded = load(&SourceArgs {
        example: Some(key.into()),
        input: None,
    })?;
    let text = format::emit_input(&loaded.input);
    match output {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Run a parsed command line and return the exit status.
pub fn run(cli: Cli, cal: &Calibrations) -> u8 {
    let result = match cli.command {
        Command::ClassifyFrame { source, point, out, kind } => {
            classify_frame_cmd(cal, &source, &point, &out, kind).map(|_| EXIT_OK)
        }
        Command::ClassifyHomogeneous { source, out, kind } => {
            classify_homogeneous_cmd(cal, &source, &out, kind).map(|_| EXIT_OK)
        }
        Command::Quaternionify { source, mode, output } => {
            quaternionify_cmd(&source, mode, output.as_deref()).map(|_| EXIT_OK)
        }
        Command::Tensors { source, point, out } => tensors_cmd(&source, &point, &out).map(|_| EXIT_OK),
        Command::Verify { all, example, json } => verify_cmd(cal, all, example.as_deref(), json),
        Command::List => {
            list_cmd();
            Ok(EXIT_OK)
        }
        Command::Export { example, output } => export_cmd(&example, output.as_deref()).map(|_| EXIT_OK),
    };
    let _ = std::io::stdout().flush();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli, &Calibrations::from_env()))
}
