//! Permutation groups, block systems and a small catalog of transitive groups.

pub mod blocks;
pub mod catalog;
pub mod group;
pub mod permutation;

pub use blocks::{
    all_block_systems, blocks_from_values, index2_transitive_subgroups, intersect_with_alternating,
    join_block_systems, principal_block_system, BlockSystem,
};
pub use group::PermGroup;
pub use permutation::Perm;
