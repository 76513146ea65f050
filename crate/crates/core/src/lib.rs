//! Exact enumeration of idempotent matrices, Kochen-Specker colorability of
//! their partial Boolean algebras with checkable certificates, and the
//! two-valued morphisms a coloring induces on symmetric matrix algebras.

pub mod enumeration;
pub mod matrix;
pub mod morphism;
pub mod partial_boolean;
pub mod scalars;
pub mod solver;
