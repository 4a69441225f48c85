//! Report emission.
//!
//! Reports are schema-stable: keys appear in a fixed order, exact numbers
//! are `"p/q"` strings (always with a denominator), and floats are written
//! with 17 significant digits, so identical inputs give byte-identical
//! output.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::value::RawValue;
use shl_core::frame_geometry::Sampled;
use shl_core::rep_theory::TypeReport;
use shl_core::tensor_algebra::Tensor;
use shl_core::Rational;

/// `p/q` with an explicit denominator, e.g. `3/1`, `-1/2`.
pub fn pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A float as a JSON number with 17 significant digits (`null` when not
/// finite).
#[derive(Clone, Debug)]
pub struct F17(pub f64);

impl Serialize for F17 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Serialize)]
pub struct ComponentJson {
    pub label: String,
    pub zero: bool,
    pub magnitude: F17,
    pub exact_magnitude: Option<String>,
}

#[derive(Serialize)]
pub struct FlagsJson {
    pub integrable: bool,
    pub integrable_name: &'static str,
    pub symplectic: bool,
}

#[derive(Serialize)]
pub struct TypeReportJson {
    pub kind: &'static str,
    pub n: usize,
    #[serde(rename = "type")]
    pub type_string: String,
    pub exact: bool,
    pub components: Vec<ComponentJson>,
    pub flags: FlagsJson,
}

impl From<&TypeReport> for TypeReportJson {
    fn from(r: &TypeReport) -> Self {
        TypeReportJson {
            kind: r.kind.as_str(),
            n: r.n,
            type_string: r.type_string(),
            exact: r.components.iter().all(|c| c.exact_magnitude.is_some()),
            components: r
                .components
                .iter()
                .map(|c| ComponentJson {
                    label: c.label.clone(),
                    zero: c.zero,
                    magnitude: F17(c.magnitude),
                    exact_magnitude: c.exact_magnitude.as_ref().map(pq),
                })
                .collect(),
            flags: FlagsJson {
                integrable: r.flags.integrable,
                integrable_name: r.integrable_name(),
                symplectic: r.flags.symplectic,
            },
        }
    }
}

/// A classification together with what was classified.
#[derive(Serialize)]
pub struct ClassificationJson {
    pub input: String,
    pub point: Option<Vec<String>>,
    pub report: TypeReportJson,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn classification_json(input: &str, point: Option<&[Rational]>, r: &TypeReport) -> String {
    to_json(&ClassificationJson {
        input: input.into(),
        point: point.map(|p| p.iter().map(pq).collect()),
        report: r.into(),
    })
}

/// Human-readable summary.
pub fn classification_text(input: &str, point: Option<&[Rational]>, r: &TypeReport) -> String {
    let mut s = String::new();
    let _ = write!(s, "{input}: {} n = {}", r.kind, r.n);
    if let Some(p) = point {
        let coords: Vec<String> = p.iter().map(Rational::to_string).collect();
        let _ = write!(s, " at ({})", coords.join(", "));
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "  type {}", r.type_string());
    for c in &r.components {
        let mag = match &c.exact_magnitude {
            Some(m) => m.to_string(),
            None => format!("{:.6e}", c.magnitude),
        };
        let _ = writeln!(s, "  {:<5} {:<5} {}", c.label, if c.zero { "zero" } else { "live" }, mag);
    }
    let _ = writeln!(
        s,
        "  {}: {}, symplectic: {}",
        r.integrable_name(),
        r.flags.integrable,
        r.flags.symplectic
    );
    s
}

/// Entry of a sparse tensor listing: indices then value.
#[derive(Serialize)]
#[serde(untagged)]
pub enum Value {
    Exact(String),
    Approx(F17),
}

#[derive(Serialize)]
pub struct SparseTensorJson {
    /// Slot meanings, e.g. `["X", "Y", "out"]`.
    pub slots: Vec<&'static str>,
    pub dim: usize,
    pub exact: bool,
    pub entries: Vec<(Vec<usize>, Value)>,
}

/// Nonzero entries of an alternating-in-the-first-two-slots tensor, listing
/// only `i < j` in those slots when `alternating` is set.
pub fn sparse_exact(t: &Tensor, slots: Vec<&'static str>, alternating: bool) -> SparseTensorJson {
    let dim = t.dim();
    let mut entries = Vec::new();
    shl_core::tensor_algebra::for_each_index(dim, t.slots(), |ix| {
        if alternating && ix[0] >= ix[1] {
            return;
        }
        let v = t.get(ix);
        if !v.is_zero() {
            entries.push((ix.to_vec(), Value::Exact(pq(v))));
        }
    });
    SparseTensorJson {
        slots,
        dim,
        exact: true,
        entries,
    }
}

pub fn sparse_sampled(t: &Sampled, slots: Vec<&'static str>) -> SparseTensorJson {
    match t {
        Sampled::Exact(t) => sparse_exact(t, slots, true),
        Sampled::Approx(t) => {
            let dim = t.dim();
            let mut entries = Vec::new();
            shl_core::tensor_algebra::for_each_index(dim, t.slots(), |ix| {
                if ix[0] >= ix[1] {
                    return;
                }
                let v = t.get(ix).to_f64();
                if v != 0.0 {
                    entries.push((ix.to_vec(), Value::Approx(F17(v))));
                }
            });
            SparseTensorJson {
                slots,
                dim,
                exact: false,
                entries,
            }
        }
    }
}

pub fn sparse_text(name: &str, t: &SparseTensorJson) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{name} [{}], {} nonzero entries{}",
        t.slots.join(", "),
        t.entries.len(),
        if t.exact { "" } else { " (approximate)" }
    );
    for (ix, v) in &t.entries {
        let ix: Vec<String> = ix.iter().map(|i| (i + 1).to_string()).collect();
        let v = match v {
            Value::Exact(s) => s.trim_end_matches("/1").to_string(),
            Value::Approx(f) => format!("{:.12e}", f.0),
        };
        let _ = writeln!(s, "  ({}) {v}", ix.join(","));
    }
    s
}
