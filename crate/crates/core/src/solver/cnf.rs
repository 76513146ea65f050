use std::fmt::Write;

use super::constraints::ConstraintSystem;

/// DIMACS CNF; variable `i + 1` true means element `i` is white. Pairwise
/// at-most-one clauses plus one at-least-one clause per decomposition.
pub fn to_dimacs(cs: &ConstraintSystem) -> String {
    let clauses = cs.ortho_pairs.len() + cs.decompositions.len();
    let mut out = String::new();
    writeln!(out, "c elements {}", cs.num_vars).unwrap();
    writeln!(out, "p cnf {} {}", cs.num_vars, clauses).unwrap();
    for &(a, b) in &cs.ortho_pairs {
        if a == b {
            writeln!(out, "-{} 0", a + 1).unwrap();
        } else {
            writeln!(out, "-{} -{} 0", a + 1, b + 1).unwrap();
        }
    }
    for d in &cs.decompositions {
        let lits: Vec<String> = d.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(out, "{} 0", lits.join(" ")).unwrap();
    }
    out
}

/// Clauses of a DIMACS text; comment and header lines skipped.
pub fn parse_dimacs(text: &str) -> Vec<Vec<i64>> {
    text.lines()
        .filter(|l| !l.starts_with('c') && !l.starts_with('p') && !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|t| t.parse::<i64>().expect("literal")).take_while(|&x| x != 0).collect())
        .collect()
}
