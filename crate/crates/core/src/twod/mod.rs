//! Planar states `zbar^lam z^mu exp(-zbar z / 2)` and Wirtinger-form operators.

mod inner;
mod op;
mod state;

pub use inner::{closed_form_state, eigencheck_2d, inner_2d, ladder_closed_form, localization_2d, renorm_inner};
pub use op::{apply_2d, apply_chain, apply_to_omega, build_op_2d, commutator_2d, compose_2d, DiffOp2D, Op2DName, OpKey};
pub use state::{omega, proportionality_2d, psi0, MonoExp, Renorm, State2D};
