//! The drivers: lattice test, field search with final adjustment, the
//! Galois starting group, short-coset counts and a group-level simulation
//! of the whole search.

mod cosets;
mod driver;
mod search;
mod simulate;
mod start;
mod table;

pub use cosets::count_short_cosets;
pub use driver::{principal_systems, AdjustReport, CallOutcome, CallRecord, PrincipalCall};
pub use search::{field_search, final_adjust, monic_transform, record_is_valid, SearchOutcome};
pub use simulate::{simulate_final_adjust, simulate_from_group, simulate_with_config, SimulationReport};
pub use start::{cycle_type_lower_bound, starting_group, DescentPlan, DescentStep, StartingGroup};
pub use table::{lattice_test, KnownSubfieldTable, Verdict};
