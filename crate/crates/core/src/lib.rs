//! Exact symbolic laboratory for harmonic-oscillator states with singular
//! vacua: Gaussian-weighted monomial states in one and two dimensions,
//! normal-ordered differential operators, Gamma-regularized indefinite inner
//! products, eps-renormalized norms, sector lattices and identity audits.

pub mod error;
pub mod localization;
pub mod oned;
pub mod radial;
pub mod rat;
pub mod scalar;
pub mod sector;
pub mod twod;
pub mod verdict;

pub use error::{Error, Result};
