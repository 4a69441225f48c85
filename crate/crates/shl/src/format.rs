//! JSON file formats for coframes and reductive homogeneous data.
//!
//! Both formats are plain JSON objects tagged by a `format` field. Exact
//! numbers are strings (`"3"`, `"-1/2"`) so nothing is lost to binary
//! floating point, and coframe coefficients are prefix s-expressions in the
//! chart coordinates `x1 … x_dim`.
//!
//! Parsing walks a [`serde_json::Value`] by hand so that every schema error
//! can name the offending location as a JSON pointer (`/forms/3/2`).

use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use shl_core::frame_geometry::{CoFrame, FrameError, FrameKind};
use shl_core::homogeneous::{HomogeneousData, HomogeneousError};
use shl_core::linalg::Matrix;
use shl_core::rep_theory::StructureKind;
use shl_core::scalar_expr::sexpr;
use shl_core::{Expr, Rational};

pub const COFRAME_FORMAT: &str = "shl-coframe";
pub const HOMOGENEOUS_FORMAT: &str = "shl-homogeneous";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: cannot read file: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("{pointer}: {source}")]
    Frame {
        pointer: String,
        #[source]
        source: FrameError,
    },
    #[error("invalid homogeneous data: {0}")]
    Homogeneous(#[from] HomogeneousError),
}

impl FormatError {
    fn schema(pointer: &str, message: impl fmt::Display) -> Self {
        FormatError::Schema {
            pointer: if pointer.is_empty() { "/".into() } else { pointer.into() },
            message: message.to_string(),
        }
    }

    /// JSON pointer of the offending value, when the error has one.
    pub fn pointer(&self) -> Option<&str> {
        match self {
            FormatError::Schema { pointer, .. } | FormatError::Frame { pointer, .. } => Some(pointer),
            _ => None,
        }
    }
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    CoFrame(CoFrame),
    Homogeneous(HomogeneousData),
}

pub fn read_input(path: &Path) -> Result<Input, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_input(&text)
}

/// Parse either format, dispatching on the `format` tag.
pub fn parse_input(text: &str) -> Result<Input, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let node = Node::root(&v);
    match node.field("format")?.str()? {
        COFRAME_FORMAT => Ok(Input::CoFrame(coframe_from_value(&v)?)),
        HOMOGENEOUS_FORMAT => Ok(Input::Homogeneous(homogeneous_from_value(&v)?)),
        other => Err(FormatError::schema(
            "/format",
            format!("unknown format `{other}` (expected {COFRAME_FORMAT} or {HOMOGENEOUS_FORMAT})"),
        )),
    }
}

pub fn parse_coframe(text: &str) -> Result<CoFrame, FormatError> {
    coframe_from_value(&serde_json::from_str(text)?)
}

pub fn parse_homogeneous(text: &str) -> Result<HomogeneousData, FormatError> {
    homogeneous_from_value(&serde_json::from_str(text)?)
}

/// A value together with its JSON pointer.
#[derive(Clone, Copy)]
struct Node<'a> {
    value: &'a Value,
    parent: Option<&'a Node<'a>>,
    key: Key<'a>,
}

#[derive(Clone, Copy)]
enum Key<'a> {
    Root,
    Field(&'a str),
    Index(usize),
}

impl<'a> Node<'a> {
    fn root(value: &'a Value) -> Self {
        Node {
            value,
            parent: None,
            key: Key::Root,
        }
    }

    fn pointer(&self) -> String {
        let mut parts = Vec::new();
        let mut cur = Some(self);
        while let Some(n) = cur {
            match n.key {
                Key::Root => {}
                Key::Field(f) => parts.push(f.replace('~', "~0").replace('/', "~1")),
                Key::Index(i) => parts.push(i.to_string()),
            }
            cur = n.parent;
        }
        parts.reverse();
        parts.iter().map(|p| format!("/{p}")).collect()
    }

    fn err(&self, message: impl fmt::Display) -> FormatError {
        FormatError::schema(&self.pointer(), message)
    }

    fn field(&'a self, name: &'a str) -> Result<Node<'a>, FormatError> {
        let obj = self.value.as_object().ok_or_else(|| self.err("expected an object"))?;
        let value = obj
            .get(name)
            .ok_or_else(|| FormatError::schema(&format!("{}/{name}", self.pointer()), "missing field"))?;
        Ok(Node {
            value,
            parent: Some(self),
            key: Key::Field(name),
        })
    }

    fn optional(&'a self, name: &'a str) -> Result<Option<Node<'a>>, FormatError> {
        let obj = self.value.as_object().ok_or_else(|| self.err("expected an object"))?;
        Ok(obj.get(name).filter(|v| !v.is_null()).map(|value| Node {
            value,
            parent: Some(self),
            key: Key::Field(name),
        }))
    }

    fn items(&'a self) -> Result<Vec<Node<'a>>, FormatError> {
        let arr = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, value)| Node {
                value,
                parent: Some(self),
                key: Key::Index(i),
            })
            .collect())
    }

    fn str(&self) -> Result<&'a str, FormatError> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    fn usize(&self) -> Result<usize, FormatError> {
        self.value
            .as_u64()
            .map(|v| v as usize)
            .ok_or_else(|| self.err("expected a non-negative integer"))
    }

    /// Rationals are strings; plain JSON integers are accepted too.
    fn rational(&self) -> Result<Rational, FormatError> {
        match self.value {
            Value::String(s) => s.parse().map_err(|e| self.err(format!("bad rational `{s}`: {e}"))),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_int(n.as_i64().unwrap())),
            _ => Err(self.err("expected a rational as a string `p/q` or an integer")),
        }
    }

    fn vector(&'a self, len: Option<usize>) -> Result<Vec<Rational>, FormatError> {
        let items = self.items()?;
        if let Some(len) = len {
            if items.len() != len {
                return Err(self.err(format!("expected {len} entries, found {}", items.len())));
            }
        }
        items.iter().map(Node::rational).collect()
    }

    /// A matrix as a list of rows.
    fn matrix(&'a self, rows: usize, cols: usize) -> Result<Matrix, FormatError> {
        let items = self.items()?;
        if items.len() != rows {
            return Err(self.err(format!("expected {rows} rows, found {}", items.len())));
        }
        let data = items
            .iter()
            .map(|r| r.vector(Some(cols)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(data))
    }

    fn tag(&'a self, expected: &str) -> Result<(), FormatError> {
        let f = self.field("format")?;
        let got = f.str()?;
        if got != expected {
            return Err(f.err(format!("expected format `{expected}`, found `{got}`")));
        }
        Ok(())
    }
}

fn coframe_from_value(v: &Value) -> Result<CoFrame, FormatError> {
    let root = Node::root(v);
    root.tag(COFRAME_FORMAT)?;
    let kind_node = root.field("kind")?;
    let kind: FrameKind = kind_node.str()?.parse().map_err(|e| kind_node.err(e))?;
    let dim_node = root.field("dim")?;
    let dim = dim_node.usize()?;
    let forms_node = root.field("forms")?;
    let rows = forms_node.items()?;
    if rows.len() != dim {
        return Err(forms_node.err(format!("expected {dim} forms, found {}", rows.len())));
    }
    let mut forms = Vec::with_capacity(dim);
    for row in &rows {
        let cells = row.items()?;
        if cells.len() != dim {
            return Err(row.err(format!(
                "coefficient row has {} entries, the matrix must be {dim}×{dim}",
                cells.len()
            )));
        }
        let mut parsed = Vec::with_capacity(dim);
        for cell in &cells {
            let text = cell.str()?;
            let e: Expr = sexpr::parse(text).map_err(|e| cell.err(format!("malformed expression: {e}")))?;
            if e.max_var() > dim {
                return Err(cell.err(format!("uses x{}, but the chart has dimension {dim}", e.max_var())));
            }
            parsed.push(e);
        }
        forms.push(parsed);
    }
    CoFrame::new(kind, forms).map_err(|source| {
        let pointer = match &source {
            FrameError::NotSquare { row, .. } | FrameError::VariableOutOfRange { row, .. } => format!("/forms/{row}"),
            FrameError::Dimension { .. } => "/dim".into(),
            _ => "/".into(),
        };
        FormatError::Frame { pointer, source }
    })
}

fn homogeneous_from_value(v: &Value) -> Result<HomogeneousData, FormatError> {
    let root = Node::root(v);
    root.tag(HOMOGENEOUS_FORMAT)?;
    let kind_node = root.field("kind")?;
    let kind: StructureKind = kind_node.str()?.parse().map_err(|e| kind_node.err(e))?;
    let dim = root.field("dim")?.usize()?;

    let mut brackets = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
    let br_node = root.field("brackets")?;
    for entry in br_node.items()? {
        let parts = entry.items()?;
        if parts.len() != 4 {
            return Err(entry.err("expected [i, j, k, coefficient]"));
        }
        let mut idx = [0usize; 3];
        for (slot, p) in idx.iter_mut().zip(&parts) {
            *slot = p.usize()?;
            if *slot >= dim {
                return Err(p.err(format!("index {} out of range for dim {dim}", *slot)));
            }
        }
        let c = parts[3].rational()?;
        let cell = &mut brackets[idx[0]][idx[1]][idx[2]];
        if !cell.is_zero() {
            return Err(entry.err("duplicate structure constant"));
        }
        *cell = c;
    }

    let basis = |name: &'static str| -> Result<Vec<Vec<Rational>>, FormatError> {
        let node = root.field(name)?;
        node.items()?.iter().map(|b| b.vector(Some(dim))).collect()
    };
    let l_basis = basis("l_basis")?;
    let m_basis = basis("m_basis")?;
    let dm = m_basis.len();
    let alpha_eh = root.field("alpha_eh")?.matrix(dm, dm)?;
    let matrices = |node: &Node, count: usize| -> Result<Vec<Matrix>, FormatError> {
        let items = node.items()?;
        if items.len() != count {
            return Err(node.err(format!("expected {count} matrices, found {}", items.len())));
        }
        items.iter().map(|m| m.matrix(dm, dm)).collect()
    };
    let nomizu = match root.optional("nomizu")? {
        Some(node) => Some(matrices(&node, dm)?),
        None => None,
    };
    let di = matrices(&root.field("di")?, l_basis.len())?;
    Ok(HomogeneousData::new(kind, brackets, l_basis, m_basis, alpha_eh, nomizu, di)?)
}

fn rat_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| rat_strings(m.row(r))).collect()
}

#[derive(Serialize)]
struct CoFrameFile<'a> {
    format: &'a str,
    kind: &'a str,
    dim: usize,
    forms: Vec<Vec<String>>,
}

pub fn emit_coframe(cf: &CoFrame) -> String {
    let file = CoFrameFile {
        format: COFRAME_FORMAT,
        kind: cf.kind().as_str(),
        dim: cf.dim(),
        forms: cf
            .forms()
            .iter()
            .map(|row| row.iter().map(Expr::to_string).collect())
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct HomogeneousFile<'a> {
    format: &'a str,
    kind: &'a str,
    dim: usize,
    /// `[i, j, k, c]`: the coefficient of `k_k` in `[k_i, k_j]`.
    brackets: Vec<(usize, usize, usize, String)>,
    l_basis: Vec<Vec<String>>,
    m_basis: Vec<Vec<String>>,
    alpha_eh: Vec<Vec<String>>,
    nomizu: Option<Vec<Vec<Vec<String>>>>,
    di: Vec<Vec<Vec<String>>>,
}

pub fn emit_homogeneous(hd: &HomogeneousData) -> String {
    let dim = hd.dim_k();
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in hd.brackets()[i][j].iter().enumerate() {
                if !c.is_zero() {
                    brackets.push((i, j, k, c.to_string()));
                }
            }
        }
    }
    let file = HomogeneousFile {
        format: HOMOGENEOUS_FORMAT,
        kind: hd.kind().as_str(),
        dim,
        brackets,
        l_basis: hd.l_basis().iter().map(|v| rat_strings(v)).collect(),
        m_basis: hd.m_basis().iter().map(|v| rat_strings(v)).collect(),
        alpha_eh: matrix_rows(hd.alpha_eh()),
        nomizu: hd.nomizu().map(|ms| ms.iter().map(matrix_rows).collect()),
        di: hd.di().iter().map(matrix_rows).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn emit_input(input: &Input) -> String {
    match input {
        Input::CoFrame(cf) => emit_coframe(cf),
        Input::Homogeneous(hd) => emit_homogeneous(hd),
    }
}
