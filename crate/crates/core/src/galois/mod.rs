//! Finite covers as permutation actions, their Galois closures, and the
//! subgroup computations on deck groups.

pub mod closure;
pub mod group;
pub mod lattice;
pub mod perm;

pub use closure::{galois_closure, galois_closure_from, FiniteCover, GaloisClosure, Limits};
pub use group::{is_isomorphic, PermGroup, Subgroup};
pub use lattice::{classify_point, coset_fixed_point_oracle, fixed_point_check, SubgroupLattice};
pub use perm::{parse_generators, Perm};

/// All subgroups of `group`, sorted by order and then by element set.
pub fn enumerate_subgroups(group: &PermGroup, limits: &Limits) -> crate::Result<Vec<Subgroup>> {
    group.enumerate_subgroups(limits.max_enumeration_order)
}
