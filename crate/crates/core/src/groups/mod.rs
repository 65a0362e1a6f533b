//! Finite permutation groups with full element tables.

mod group;
mod iso;
pub mod named;
mod perm;
mod subgroups;
mod wreath;

pub use group::{FiniteGroup, Subgroup};
pub use iso::IsoClass;
pub use perm::Permutation;
pub use subgroups::{all_subgroups, SubgroupClassList};
pub use wreath::wreath_product;
