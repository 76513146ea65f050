//! Certificate replay that shares no propagation code with the search.

use thiserror::Error;

use super::constraints::{Color, ConstraintRef, ConstraintSystem};
use super::search::{Certificate, Outcome, RefutationNode, Verdict};
use crate::matrix::SquareMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("certificate is for {0} variables, system has {1}")]
    Size(usize, usize),
    #[error("SAT certificate without a coloring, or UNSAT without a refutation")]
    Shape,
    #[error("coloring violates the system: {0}")]
    BadColoring(String),
    #[error("constraint reference {0:?} out of range")]
    UnknownConstraint(ConstraintRef),
    #[error("variable {0} assigned twice along a branch")]
    Reassigned(usize),
    #[error("{by:?} does not force variable {var} to {color:?}")]
    NotForced { var: usize, color: Color, by: ConstraintRef },
    #[error("{0:?} is not violated at its leaf")]
    NotConflicting(ConstraintRef),
    #[error("split children must decide one unassigned variable white, then black")]
    BadSplit,
    #[error("root carries a decision")]
    RootDecision,
    #[error("constraint {0} does not hold between the matrices")]
    FalseConstraint(String),
}

fn vars_of(cs: &ConstraintSystem, c: ConstraintRef) -> Result<(Vec<usize>, bool), CheckError> {
    match c {
        ConstraintRef::Pair(k) => {
            let &(a, b) = cs.ortho_pairs.get(k).ok_or(CheckError::UnknownConstraint(c))?;
            Ok((if a == b { vec![a] } else { vec![a, b] }, false))
        }
        ConstraintRef::Decomposition(k) => {
            Ok((cs.decompositions.get(k).ok_or(CheckError::UnknownConstraint(c))?.clone(), true))
        }
    }
}

fn white_count(vars: &[usize], assign: &[Option<Color>]) -> usize {
    vars.iter().filter(|&&v| assign[v] == Some(Color::White)).count()
}

fn forces(cs: &ConstraintSystem, c: ConstraintRef, var: usize, color: Color, assign: &[Option<Color>]) -> Result<bool, CheckError> {
    let (vars, exactly_one) = vars_of(cs, c)?;
    if !vars.contains(&var) {
        return Ok(false);
    }
    let others: Vec<usize> = vars.iter().copied().filter(|&v| v != var).collect();
    Ok(match color {
        // a self-pair, or some other member already white
        Color::Black => vars.len() == 1 && !exactly_one || white_count(&others, assign) > 0,
        Color::White => exactly_one && others.iter().all(|&v| assign[v] == Some(Color::Black)),
    })
}

fn violated(cs: &ConstraintSystem, c: ConstraintRef, assign: &[Option<Color>]) -> Result<bool, CheckError> {
    let (vars, exactly_one) = vars_of(cs, c)?;
    let whites = white_count(&vars, assign);
    if vars.len() == 1 && !exactly_one {
        return Ok(whites == 1);
    }
    Ok(whites >= 2 || exactly_one && vars.iter().all(|&v| assign[v] == Some(Color::Black)))
}

fn replay(cs: &ConstraintSystem, node: &RefutationNode, mut assign: Vec<Option<Color>>) -> Result<usize, CheckError> {
    if let Some(d) = node.decision {
        if assign[d.var].is_some() {
            return Err(CheckError::Reassigned(d.var));
        }
        assign[d.var] = Some(d.color);
    }
    for s in &node.propagations {
        if assign[s.var].is_some() {
            return Err(CheckError::Reassigned(s.var));
        }
        if !forces(cs, s.by, s.var, s.color, &assign)? {
            return Err(CheckError::NotForced { var: s.var, color: s.color, by: s.by });
        }
        assign[s.var] = Some(s.color);
    }
    match &node.outcome {
        Outcome::Conflict { by, .. } => {
            if violated(cs, *by, &assign)? {
                Ok(1)
            } else {
                Err(CheckError::NotConflicting(*by))
            }
        }
        Outcome::Split(children) => {
            let (w, b) = (children[0].decision, children[1].decision);
            match (w, b) {
                (Some(w), Some(b)) if w.var == b.var && w.color == Color::White && b.color == Color::Black && assign[w.var].is_none() => {
                    Ok(replay(cs, &children[0], assign.clone())? + replay(cs, &children[1], assign)?)
                }
                _ => Err(CheckError::BadSplit),
            }
        }
    }
}

/// Replays a certificate: SAT colorings against every constraint, UNSAT trees
/// step by step. Returns the number of leaves checked.
pub fn check_certificate(cs: &ConstraintSystem, cert: &Certificate) -> Result<usize, CheckError> {
    if cert.num_vars != cs.num_vars {
        return Err(CheckError::Size(cert.num_vars, cs.num_vars));
    }
    match (cert.verdict, &cert.refutation) {
        (Verdict::Sat, _) => {
            let coloring = cert.coloring().ok_or(CheckError::Shape)?;
            cs.check(&coloring).map_err(|v| CheckError::BadColoring(format!("{v:?}")))?;
            Ok(1)
        }
        (Verdict::Unsat, Some(root)) => {
            if root.decision.is_some() {
                return Err(CheckError::RootDecision);
            }
            replay(cs, root, vec![None; cs.num_vars])
        }
        (Verdict::Unsat, None) => Err(CheckError::Shape),
    }
}

/// Confirms every pair is orthogonal and every decomposition is pairwise
/// orthogonal and sums to the identity, by direct multiplication.
pub fn audit_constraints(cs: &ConstraintSystem, elems: &[SquareMatrix]) -> Result<(), CheckError> {
    if elems.len() != cs.num_vars {
        return Err(CheckError::Size(elems.len(), cs.num_vars));
    }
    for (k, &(a, b)) in cs.ortho_pairs.iter().enumerate() {
        if !elems[a].mul(&elems[b]).is_zero() || !elems[b].mul(&elems[a]).is_zero() {
            return Err(CheckError::FalseConstraint(cs.constraint_name(ConstraintRef::Pair(k))));
        }
    }
    for (k, d) in cs.decompositions.iter().enumerate() {
        let first = &elems[d[0]];
        let mut sum = SquareMatrix::zero(first.ring(), first.n());
        for &v in d {
            sum = sum.add(&elems[v]);
        }
        let pairwise = d.iter().all(|&a| d.iter().all(|&b| a == b || elems[a].mul(&elems[b]).is_zero()));
        if !sum.is_identity() || !pairwise {
            return Err(CheckError::FalseConstraint(cs.constraint_name(ConstraintRef::Decomposition(k))));
        }
    }
    Ok(())
}
