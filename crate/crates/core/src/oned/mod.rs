//! The half-line oscillator with the `2 x^-2` potential: Gaussian-weighted
//! monomial states, normal-ordered operators in `x` and `d/dx`, the
//! factorization ladders, and the Gamma-regularized inner product.

mod inner;
mod ladder;
mod op;
mod state;

pub use inner::{eigencheck_1d, inner_1d, localization_1d, pair_exponents};
pub use ladder::{exponents_all, is_even_int, ladder_family_1d, ladder_state_1d, solve_vacuum_1d, DEFAULT_DEPTH_LIMIT};
pub use op::{apply_1d, build_op_1d, commutator_1d, compose_1d, DiffOp1D, Op1DName};
pub use state::{proportionality, State1D};
