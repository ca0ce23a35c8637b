//! Lattice reduction and the principal subfields it exposes.

mod principal;
mod reduce;

pub use principal::{build_principal_lattice, initial_lll_precision, principal_subfield, principal_subfield_traced, rational_record, removal_bound};
pub use reduce::{lll_with_removals, LatticeBasis};
pub(crate) use principal::same_block;
