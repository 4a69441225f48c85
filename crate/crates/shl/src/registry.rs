//! The built-in examples with the types stated for them in the literature.

use shl_core::frame_geometry::{examples as frames, CoFrame};
use shl_core::homogeneous::{examples as spaces, HomogeneousData};
use shl_core::rep_theory::StructureKind;

use shl_core::Rational;

use crate::format::Input;

#[derive(Clone, Copy, Debug)]
pub enum Source {
    Frame(fn() -> CoFrame),
    Homogeneous(fn() -> HomogeneousData),
}

/// What the literature says about an example.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub kind: StructureKind,
    pub n: usize,
    /// Type string, `X` followed by the indices of the nonzero modules.
    pub type_string: &'static str,
    /// Stated value of the integrability flag (hypercomplex for hsH).
    pub integrable: Option<bool>,
    pub symplectic: Option<bool>,
}

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub key: &'static str,
    pub description: &'static str,
    pub source: Source,
    pub expected: Expected,
    /// Nonzero coordinates `(index, value)` of the point at which the type
    /// is stated; empty for the origin. Charts that exclude the origin move
    /// it to the nearest lattice point of their domain.
    pub base_offset: &'static [(usize, i64)],
}

impl Entry {
    pub fn input(&self) -> Input {
        match self.source {
            Source::Frame(f) => Input::CoFrame(f()),
            Source::Homogeneous(f) => Input::Homogeneous(f()),
        }
    }

    pub fn base_point(&self, dim: usize) -> Vec<Rational> {
        let mut p = vec![Rational::zero(); dim];
        for &(i, v) in self.base_offset {
            p[i] = Rational::from_int(v);
        }
        p
    }

    pub fn is_frame(&self) -> bool {
        matches!(self.source, Source::Frame(_))
    }
}

const fn expected(n: usize, type_string: &'static str) -> Expected {
    Expected {
        kind: StructureKind::HsH,
        n,
        type_string,
        integrable: None,
        symplectic: None,
    }
}

fn sl4_sl2() -> HomogeneousData {
    spaces::sl4_sl2().expect("built-in data validates")
}

pub const ENTRIES: [Entry; 9] = [
    Entry {
        key: "r12-x12",
        description: "ℝ¹² coframe with ϑ⁶ and ϑ¹² twisted",
        source: Source::Frame(frames::r12_x12),
        expected: expected(3, "X12"),
        base_offset: &[],
    },
    Entry {
        key: "r8-x123567",
        description: "ℝ⁸ coframe with ϑ¹ = dx₁ + x₂dx₃",
        source: Source::Frame(frames::r8_x123567),
        expected: expected(2, "X123567"),
        base_offset: &[],
    },
    Entry {
        key: "r8-conformal-x47",
        description: "ℝ⁸ coframe ϑ = x₁dx, conformal to the flat structure",
        source: Source::Frame(frames::r8_conformal_x47),
        expected: Expected {
            integrable: Some(true),
            ..expected(2, "X47")
        },
        // the chart is x₁ ≠ 0
        base_offset: &[(0, 1)],
    },
    Entry {
        key: "r8-x1567",
        description: "ℝ⁸ coframe with ϑ¹ = dx₁ + x₄dx₅",
        source: Source::Frame(frames::r8_x1567),
        expected: Expected {
            symplectic: Some(true),
            ..expected(2, "X1567")
        },
        base_offset: &[],
    },
    Entry {
        key: "r12-pure-x3",
        description: "ℝ¹² coframe of pure type",
        source: Source::Frame(frames::r12_pure_x3),
        expected: expected(3, "X3"),
        base_offset: &[],
    },
    Entry {
        key: "lie-triangular-x35",
        description: "left-invariant structure on the triangular quaternionic-matrix group",
        source: Source::Homogeneous(spaces::triangular_group),
        expected: expected(3, "X35"),
        base_offset: &[],
    },
    Entry {
        key: "sl4-sl2-x1234567",
        description: "Sl(4,ℝ)/Sl(2,ℝ) with its invariant SO*(6)-structure",
        source: Source::Homogeneous(sl4_sl2),
        expected: expected(3, "X1234567"),
        base_offset: &[],
    },
    Entry {
        key: "quat-alpha-x17",
        description: "α-quaternionification of the 2-dimensional non-abelian group",
        source: Source::Frame(frames::quat_alpha_x17),
        expected: Expected {
            symplectic: Some(true),
            ..expected(2, "X17")
        },
        base_offset: &[],
    },
    Entry {
        key: "quat-beta-x1235",
        description: "β-quaternionification of the 6-dimensional unipotent group",
        source: Source::Frame(frames::quat_beta_x1235),
        expected: expected(3, "X1235"),
        base_offset: &[],
    },
];

pub fn lookup(key: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.key == key)
}

pub fn keys() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.key)
}
