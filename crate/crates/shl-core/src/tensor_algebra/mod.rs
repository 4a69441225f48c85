//! Dense multilinear algebra over the model space: tensors with declared
//! slot valences and symmetries, the Spencer differential, the action of
//! End(V)-valued 1-forms on tensors, and ω₀-musical maps.

mod ops;
mod tensor;

pub use ops::{
    check_torsion, for_each_index, lower, one_form_action, pair_from_index, pair_index, pi_omega,
    raise, solve_a_tensor, spencer_delta, torsion_coordinates, torsion_from_coordinates,
    EndoOneForm,
};
pub use tensor::{SymKind, Symmetry, Tensor, TensorError, Valence};
