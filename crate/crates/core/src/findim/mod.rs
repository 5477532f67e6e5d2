//! Exact finite-dimensional layer: algebras by structure constants, submodule and ideal
//! enumeration over finite fields, filter systems and their subcategories.

pub mod algebra;
pub mod corpus;
pub mod filter;
pub mod module;
pub mod subspace;

pub use algebra::{
    build_algebra, enumerate_right_ideals, enumerate_two_sided_ideals, examples, saturate_exact,
    stability_predicates, AlgebraSpec, LinIdeal, StabilityPredicates, StructAlgebra,
};
pub use filter::{
    enumerate_filter_systems, filter_system_roundtrip, gabriel_violation, is_gabriel_fs, is_principal_fs,
    subcategory_membership, FilterSystem, Generators,
};
pub use module::{enumerate_right_submodules, FDModule};
pub use subspace::{Subspace, DEFAULT_BOUND};
