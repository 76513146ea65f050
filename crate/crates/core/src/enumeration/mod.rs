//! Subspaces, idempotent and projection inventories of `M_n(F_q)`, and bundled datasets.

pub mod datasets;
mod inventory;
mod subspaces;

pub use inventory::{
    canonical_vector, enumerate_idempotents, enumerate_projections, non_isotropic_lines,
    IdempotentInventory,
};
pub use subspaces::{gaussian_binomial, subspaces, Subspace};
