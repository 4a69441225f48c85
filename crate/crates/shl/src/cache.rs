//! Persistent cache of projector calibrations.
//!
//! Building the isotypic projectors at n = 3 takes a couple of seconds, so
//! they are stored on disk, keyed by the structure kind, `n` and a hash of
//! the model tensors. The directory is `$SHL_CACHE_DIR` when set, otherwise
//! `shl-cache` next to the executable. A file that fails to parse or to pass
//! the consistency checks on load is ignored and rebuilt; any I/O failure
//! only costs the recomputation.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use shl_core::eh_model::ModelSpace;
use shl_core::linalg::{Matrix, SparseVec};
use shl_core::rep_theory::{Decomposition, IntrinsicQuotient, IsotypicComponent, Irrep, Part, SpinLevel, StructureKind};
use shl_core::Rational;

pub const CACHE_ENV: &str = "SHL_CACHE_DIR";
const VERSION: &str = "shl-calibration-v1";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error(transparent)]
    Rep(#[from] shl_core::rep_theory::RepError),
    #[error("building the {kind} calibration for n = {n} failed: {message}")]
    Build { kind: StructureKind, n: usize, message: String },
}

#[derive(Serialize, Deserialize)]
struct CachedComponent {
    label: String,
    level: String,
    irreps: Vec<String>,
    part: String,
    sp1_eigenvalue: String,
    so_star_eigenvalue: String,
    dim: usize,
    complex_dim: usize,
    /// Nonzero projector entries `(row, column, value)`.
    projector: Vec<(usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: String,
    kind: String,
    n: usize,
    model_hash: String,
    quotient_dim: usize,
    casimir_on_e: String,
    casimir_on_h: String,
    components: Vec<CachedComponent>,
}

/// Hash of the data a calibration depends on.
pub fn model_hash(kind: StructureKind, m: &ModelSpace) -> String {
    let mut h = Sha256::new();
    h.update(VERSION.as_bytes());
    h.update(kind.as_str().as_bytes());
    h.update((m.n() as u64).to_le_bytes());
    for mat in m.triple().iter().chain(std::iter::once(m.omega())) {
        for x in mat.data() {
            h.update(x.to_string().as_bytes());
            h.update(b",");
        }
        h.update(b";");
    }
    format!("{:x}", h.finalize())
}

fn level_str(l: SpinLevel) -> &'static str {
    match l {
        SpinLevel::H => "H",
        SpinLevel::S3H => "S3H",
    }
}

fn parse_level(s: &str) -> Option<SpinLevel> {
    match s {
        "H" => Some(SpinLevel::H),
        "S3H" => Some(SpinLevel::S3H),
        _ => None,
    }
}

fn irrep_str(i: Irrep) -> &'static str {
    match i {
        Irrep::E => "E",
        Irrep::Lambda3E => "Lambda3E",
        Irrep::K => "K",
        Irrep::S3E0 => "S3E0",
    }
}

fn parse_irrep(s: &str) -> Option<Irrep> {
    Some(match s {
        "E" => Irrep::E,
        "Lambda3E" => Irrep::Lambda3E,
        "K" => Irrep::K,
        "S3E0" => Irrep::S3E0,
        _ => return None,
    })
}

fn part_str(p: Part) -> &'static str {
    match p {
        Part::ThreeForm => "three_form",
        Part::Complement => "complement",
    }
}

fn parse_part(s: &str) -> Option<Part> {
    match s {
        "three_form" => Some(Part::ThreeForm),
        "complement" => Some(Part::Complement),
        _ => None,
    }
}

fn encode(kind: StructureKind, hash: &str, d: &Decomposition) -> CacheFile {
    CacheFile {
        version: VERSION.into(),
        kind: kind.as_str().into(),
        n: d.n(),
        model_hash: hash.into(),
        quotient_dim: d.quotient.dim(),
        casimir_on_e: d.casimir_on_e.to_string(),
        casimir_on_h: d.casimir_on_h.to_string(),
        components: d
            .components
            .iter()
            .map(|c| {
                let mut projector = Vec::new();
                for r in 0..c.projector.rows() {
                    for (col, x) in c.projector.row(r).iter().enumerate() {
                        if !x.is_zero() {
                            projector.push((r, col, x.to_string()));
                        }
                    }
                }
                CachedComponent {
                    label: c.label.clone(),
                    level: level_str(c.level).into(),
                    irreps: c.irreps.iter().map(|i| irrep_str(*i).into()).collect(),
                    part: part_str(c.part).into(),
                    sp1_eigenvalue: c.sp1_eigenvalue.to_string(),
                    so_star_eigenvalue: c.so_star_eigenvalue.to_string(),
                    dim: c.dim,
                    complex_dim: c.complex_dim,
                    projector,
                }
            })
            .collect(),
    }
}

/// Deterministic probe vector for the load-time checks.
fn probe(dim: usize, seed: u64) -> SparseVec {
    let mut s = seed;
    let v: Vec<Rational> = (0..dim)
        .map(|_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Rational::from_int(((s >> 33) % 7) as i64 - 3)
        })
        .collect();
    SparseVec::from_dense(&v)
}

fn decode(file: CacheFile, kind: StructureKind, m: &ModelSpace, hash: &str) -> Option<Decomposition> {
    if file.version != VERSION || file.kind != kind.as_str() || file.n != m.n() || file.model_hash != hash {
        return None;
    }
    let quotient = IntrinsicQuotient::new(m, kind).ok()?;
    let qd = quotient.dim();
    if file.quotient_dim != qd {
        return None;
    }
    let mut components = Vec::with_capacity(file.components.len());
    for c in file.components {
        let mut projector = Matrix::zeros(qd, qd);
        for (r, col, x) in &c.projector {
            if *r >= qd || *col >= qd {
                return None;
            }
            projector[(*r, *col)] = x.parse().ok()?;
        }
        components.push(IsotypicComponent {
            label: c.label,
            level: parse_level(&c.level)?,
            irreps: c.irreps.iter().map(|s| parse_irrep(s)).collect::<Option<_>>()?,
            part: parse_part(&c.part)?,
            sp1_eigenvalue: c.sp1_eigenvalue.parse().ok()?,
            so_star_eigenvalue: c.so_star_eigenvalue.parse().ok()?,
            dim: c.dim,
            complex_dim: c.complex_dim,
            projector,
        });
    }
    // cheap consistency checks: traces, completeness, and idempotence and
    // equivariance on probe vectors
    let mut sum = Matrix::zeros(qd, qd);
    for c in &components {
        if c.projector.trace() != Rational::from_int(c.dim as i64) {
            return None;
        }
        sum = sum.add(&c.projector);
    }
    if sum != Matrix::identity(qd) {
        return None;
    }
    let actions: Vec<_> = quotient.actions().cloned().collect();
    for (i, c) in components.iter().enumerate() {
        let v = probe(qd, i as u64 + 1);
        let pv = SparseVec::from_dense(&c.apply(&v));
        if c.apply(&pv) != pv.to_dense(qd) {
            return None;
        }
        let xi = &actions[i % actions.len()];
        if SparseVec::from_dense(&c.apply(&xi.apply(&v))) != xi.apply(&pv) {
            return None;
        }
    }
    let lee = quotient.lee_matrix();
    Some(Decomposition {
        quotient,
        components,
        lee,
        casimir_on_e: file.casimir_on_e.parse().ok()?,
        casimir_on_h: file.casimir_on_h.parse().ok()?,
    })
}

type Slot = Arc<OnceLock<Result<Arc<Decomposition>, String>>>;

/// Decompositions by `(kind, n)`, in memory and optionally on disk.
#[derive(Default)]
pub struct Calibrations {
    dir: Option<PathBuf>,
    memo: Mutex<HashMap<(StructureKind, usize), Slot>>,
}

impl Calibrations {
    /// Use `$SHL_CACHE_DIR`, else `shl-cache` beside the executable.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| {
                std::env::current_exe()
                    .ok()
                    .and_then(|p| p.parent().map(|d| d.join("shl-cache")))
            });
        Calibrations::with_dir(dir)
    }

    /// `None` keeps everything in memory.
    pub fn with_dir(dir: Option<PathBuf>) -> Self {
        Calibrations {
            dir,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn file_for(&self, kind: StructureKind, n: usize) -> Option<PathBuf> {
        let m = ModelSpace::standard(n).ok()?;
        let hash = model_hash(kind, &m);
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{}-n{n}-{}.json", kind.as_str(), &hash[..16])))
    }

    /// The decomposition for `(kind, n)`, built at most once per process.
    pub fn get(&self, kind: StructureKind, n: usize) -> Result<Arc<Decomposition>, CacheError> {
        let slot = {
            let mut memo = self.memo.lock().expect("cache lock");
            memo.entry((kind, n)).or_default().clone()
        };
        slot.get_or_init(|| self.load_or_build(kind, n).map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(|message| CacheError::Build { kind, n, message })
    }

    fn load_or_build(&self, kind: StructureKind, n: usize) -> Result<Decomposition, CacheError> {
        let m = ModelSpace::standard(n).map_err(shl_core::rep_theory::RepError::from)?;
        let hash = model_hash(kind, &m);
        let path = self.file_for(kind, n);
        if let Some(path) = &path {
            if let Some(d) = std::fs::read(path)
                .ok()
                .and_then(|bytes| serde_json::from_slice::<CacheFile>(&bytes).ok())
                .and_then(|f| decode(f, kind, &m, &hash))
            {
                return Ok(d);
            }
        }
        let d = Decomposition::new(&m, kind)?;
        if let Some(path) = &path {
            if let Err(e) = store(path, &encode(kind, &hash, &d)) {
                eprintln!("warning: could not write calibration cache {}: {e}", path.display());
            }
        }
        Ok(d)
    }
}

fn store(path: &Path, file: &CacheFile) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    std::fs::write(&tmp, serde_json::to_vec(file)?)?;
    std::fs::rename(&tmp, path)
}
