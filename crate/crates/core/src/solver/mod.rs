//! Constraint extraction, a deterministic complete search with replayable
//! certificates, and the constructions that transport uncolorability.

mod checker;
mod cnf;
mod constraints;
mod counting;
mod lift;
mod search;

use std::collections::HashMap;

use crate::matrix::SquareMatrix;

pub use checker::{audit_constraints, check_certificate, CheckError};
pub use cnf::{parse_dimacs, to_dimacs};
pub use constraints::{dedup_matrices, extract_constraints, Color, ConstraintRef, ConstraintSystem, Violation};
pub use counting::{counting_obstruction_check, CountingReport};
pub use lift::{lift_uncolorable, permutation_closure, permutations, PermutationClosure, MAX_DIMENSION};
pub use search::{
    all_colorings, brute_force_count, count_colorings, solve, solve_parallel, Certificate, Decision, Outcome,
    RefutationNode, SolverError, Step, Verdict, COUNT_LIMIT,
};

pub(crate) fn unit_decompositions_of(elems: &[SquareMatrix], ortho: &[Vec<bool>], ranks: &[usize]) -> Vec<Vec<usize>> {
    constraints::unit_decompositions(elems, ortho, ranks)
}

/// Renames decompositions matching a named family (0-based indices, any order);
/// returns how many were renamed.
pub fn name_decompositions(cs: &mut ConstraintSystem, named: &[(String, Vec<usize>)]) -> usize {
    let lookup: HashMap<Vec<usize>, &String> = named
        .iter()
        .map(|(name, fam)| {
            let mut f = fam.clone();
            f.sort_unstable();
            (f, name)
        })
        .collect();
    let mut renamed = 0;
    for (k, d) in cs.decompositions.iter().enumerate() {
        if let Some(name) = lookup.get(d) {
            cs.decomposition_labels[k] = (*name).clone();
            renamed += 1;
        }
    }
    renamed
}
