//! Exact scalar arithmetic: graded constants, polynomials and Laurent data in
//! the regulator `eps`, and Gamma values with their residues.

mod affine;
mod eps;
mod gamma;
mod graded;
mod laurent;
mod sign;

pub use affine::EpsAffine;
pub use eps::EpsScalar;
pub use gamma::{gamma_exact, gamma_laurent};
pub use graded::{gs, GradedScalar};
pub use laurent::LaurentValue;
pub use sign::{scalar_sign, Sign};
