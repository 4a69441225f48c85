//! Matrix Lie algebras, their tensor representations, Casimir operators and
//! the intrinsic-torsion classifier built on top of them.
//!
//! The classifier works on `W = Λ²V* ⊗ V` in the coordinates
//! `pair(x, y)·dim + k` (`x < y`). The image of the Spencer map is kept in a
//! fully reduced sparse echelon form; its free columns are the coordinates
//! of the quotient. Isotypic projectors are polynomials in the two Casimirs
//! (of so*(2n) and of sp(1)) times the split into the part coming from
//! 3-forms and its complement.

use alloc::string::String;

mod algebra;
mod classify;
mod decompose;
mod module;
mod quotient;

pub use algebra::{algebra_for_model, lie_algebra_basis, AlgebraKind, MatrixAlgebra};
pub use classify::{classify_quotient_vector, classify_torsion, classify_torsion_approx, ComponentReport, Flags, TypeReport};
pub use decompose::{
    generating_subset, irrep_complex_dim, isotypic_decomposition, Decomposition, Irrep,
    IsotypicComponent, Part, ProjectorCheck, SpinLevel, ZERO_THRESHOLD,
};
pub use module::{
    act, action_matrix, module_action, torsion_action_matrix, torsion_space_dim, LieModule,
    SparseMatrix,
};
pub use quotient::{delta_image, delta_kernel_dim, intrinsic_quotient, IntrinsicQuotient, ParseKindError,
    StructureKind,
};

use crate::eh_model::ModelError;
use crate::linalg::RootError;
use crate::tensor_algebra::TensorError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("commutator of basis elements {i} and {j} leaves the span")]
    NotClosed { i: usize, j: usize },
    #[error("trace form of the algebra is degenerate")]
    DegenerateTraceForm,
    #[error("tensor shapes with {0} slots are not supported (at most 5)")]
    ShapeTooLarge(usize),
    #[error("Casimir eigenvalues: {0}")]
    Root(#[from] RootError),
    #[error("minimal polynomial check failed for the {0} Casimir")]
    MinimalPolynomial(&'static str),
    #[error("could not label the component {0}")]
    Labeling(String),
    #[error("the Spencer map is not injective on V*⊗{0}")]
    NotInjective(&'static str),
}
