//! State lattices generated by the b-operators, their Gram matrices and
//! signatures, eps-limit classification, selection-rule checks and the
//! identity audit.

mod audit;
mod dark;
mod export;
mod gram;
mod lattice;
mod linalg;

pub use audit::{identity_audit, solve_scalar};
pub use dark::{dark_check, DarkEntry, DarkReport, Monomial, DARK_DEGREE_LIMIT, DEFAULT_DARK_DEGREE};
pub use export::{lattice_export, ExportFormat};
pub use gram::{classify_limit, gram, quotient_report, sector_product, GramBlock, LimitClass, LimitReport, QuotientBlock, QuotientReport, Signature};
pub use lattice::{
    eps_sector, eps_sector_mirror, fig1_sector, fig2_sector, fig3_sector, generate_sector, node_key, Edge, Node, NodeKey,
    SectorLattice, ALL_GENERATORS, DEFAULT_SECTOR_DEPTH, FIG2_GENERATORS, FIG3_GENERATORS, SECTOR_DEPTH_LIMIT,
};
