use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::matrix::{MatrixError, SquareMatrix};

/// Black/white; white marks membership in the partial ultrafilter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintRef {
    /// At most one white; `(i, i)` forces `i` black.
    Pair(usize),
    /// Exactly one white.
    Decomposition(usize),
}

/// Orthogonal pairs and unit decompositions over variables `0..num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub num_vars: usize,
    pub var_labels: Vec<String>,
    /// Sorted, `i <= j`.
    pub ortho_pairs: Vec<(usize, usize)>,
    /// Each family sorted; families sorted.
    pub decompositions: Vec<Vec<usize>>,
    pub decomposition_labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// How a state violates a constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    WhitePair(usize, usize),
    WhiteZero(usize),
    NoWhite(usize),
    SeveralWhite(usize),
}

impl ConstraintSystem {
    /// Builds and normalizes; decomposition pairs are added to the pair list.
    pub fn new(num_vars: usize, pairs: Vec<(usize, usize)>, decompositions: Vec<Vec<usize>>) -> Self {
        let mut pair_set: HashSet<(usize, usize)> =
            pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        let mut decs: Vec<Vec<usize>> = decompositions
            .into_iter()
            .map(|mut d| {
                d.sort_unstable();
                d.dedup();
                d
            })
            .collect();
        decs.sort();
        decs.dedup();
        for d in &decs {
            for (x, &a) in d.iter().enumerate() {
                for &b in &d[x + 1..] {
                    pair_set.insert((a, b));
                }
            }
        }
        let mut ortho_pairs: Vec<_> = pair_set.into_iter().collect();
        ortho_pairs.sort_unstable();
        let decomposition_labels = (0..decs.len()).map(|k| format!("D{}", k + 1)).collect();
        ConstraintSystem {
            num_vars,
            var_labels: (0..num_vars).map(|i| i.to_string()).collect(),
            ortho_pairs,
            decompositions: decs,
            decomposition_labels,
            warnings: Vec::new(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.num_vars);
        self.var_labels = labels;
        self
    }

    pub fn constraint_name(&self, c: ConstraintRef) -> String {
        match c {
            ConstraintRef::Pair(k) => {
                let (a, b) = self.ortho_pairs[k];
                format!("pair({},{})", self.var_labels[a], self.var_labels[b])
            }
            ConstraintRef::Decomposition(k) => self.decomposition_labels[k].clone(),
        }
    }

    /// First violated constraint of a total coloring.
    pub fn check(&self, colors: &[Color]) -> Result<(), Violation> {
        assert_eq!(colors.len(), self.num_vars);
        for &(a, b) in &self.ortho_pairs {
            if colors[a] == Color::White && colors[b] == Color::White {
                return Err(if a == b { Violation::WhiteZero(a) } else { Violation::WhitePair(a, b) });
            }
        }
        for (k, d) in self.decompositions.iter().enumerate() {
            match d.iter().filter(|&&v| colors[v] == Color::White).count() {
                0 => return Err(Violation::NoWhite(k)),
                1 => {}
                _ => return Err(Violation::SeveralWhite(k)),
            }
        }
        Ok(())
    }

    /// Restriction to the variables in `keep` (renumbered in order).
    pub fn restrict(&self, keep: &[usize]) -> ConstraintSystem {
        let pos: std::collections::HashMap<usize, usize> =
            keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let pairs = self
            .ortho_pairs
            .iter()
            .filter_map(|(a, b)| Some((*pos.get(a)?, *pos.get(b)?)))
            .collect();
        let decs = self
            .decompositions
            .iter()
            .filter(|d| d.iter().all(|v| pos.contains_key(v)))
            .map(|d| d.iter().map(|v| pos[v]).collect())
            .collect();
        let labels = keep.iter().map(|&v| self.var_labels[v].clone()).collect();
        ConstraintSystem::new(keep.len(), pairs, decs).with_labels(labels)
    }
}

/// Drops repeated matrices, keeping first occurrences; returns kept indices.
pub fn dedup_matrices(list: &[SquareMatrix]) -> (Vec<SquareMatrix>, Vec<usize>) {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut kept = Vec::new();
    for (i, m) in list.iter().enumerate() {
        if seen.insert(m.clone()) {
            out.push(m.clone());
            kept.push(i);
        }
    }
    (out, kept)
}

/// Pairwise orthogonality table (`ef = fe = 0`); zero is orthogonal to itself.
pub(crate) fn orthogonality(elems: &[SquareMatrix]) -> Vec<Vec<bool>> {
    use rayon::prelude::*;
    let m = elems.len();
    let products: Vec<Vec<bool>> = (0..m)
        .into_par_iter()
        .map(|i| (0..m).map(|j| elems[i].mul(&elems[j]).is_zero()).collect())
        .collect();
    (0..m).map(|i| (0..m).map(|j| products[i][j] && products[j][i]).collect()).collect()
}

/// Families of distinct nonzero, pairwise orthogonal elements summing to the
/// identity. Depth-first over increasing indices, pruned by rank sum.
pub(crate) fn unit_decompositions(elems: &[SquareMatrix], ortho: &[Vec<bool>], ranks: &[usize]) -> Vec<Vec<usize>> {
    let Some(first) = elems.first() else { return Vec::new() };
    let n = first.n();
    let identity = SquareMatrix::identity(first.ring(), n);
    let zero = SquareMatrix::zero(first.ring(), n);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(
        start: usize,
        acc: &SquareMatrix,
        acc_rank: usize,
        stack: &mut Vec<usize>,
        ctx: (&[SquareMatrix], &[Vec<bool>], &[usize], usize, &SquareMatrix),
        out: &mut Vec<Vec<usize>>,
    ) {
        let (elems, ortho, ranks, n, identity) = ctx;
        if acc_rank == n {
            if acc == identity {
                out.push(stack.clone());
            }
            return;
        }
        for j in start..elems.len() {
            if ranks[j] == 0 || acc_rank + ranks[j] > n || !stack.iter().all(|&s| ortho[s][j]) {
                continue;
            }
            stack.push(j);
            go(j + 1, &acc.add(&elems[j]), acc_rank + ranks[j], stack, ctx, out);
            stack.pop();
        }
    }
    go(0, &zero, 0, &mut stack, (elems, ortho, ranks, n, &identity), &mut out);
    out
}

/// Constraint system of a list of idempotents of one ring and dimension.
/// Repeats are dropped (keeping first occurrences) with a warning.
pub fn extract_constraints(list: &[SquareMatrix]) -> Result<(ConstraintSystem, Vec<SquareMatrix>), MatrixError> {
    let (elems, kept) = dedup_matrices(list);
    if let Some(first) = elems.first() {
        if let Some(bad) = elems.iter().find(|e| e.n() != first.n()) {
            return Err(MatrixError::ShapeMismatch(bad.n(), first.n()));
        }
        if let Some(bad) = elems.iter().find(|e| e.ring() != first.ring()) {
            return Err(MatrixError::RingMismatch(bad.ring().to_string(), first.ring().to_string()));
        }
    }
    let ranks = elems.iter().map(|e| e.rank_of_idempotent()).collect::<Result<Vec<_>, _>>()?;
    let ortho = orthogonality(&elems);
    let mut pairs = Vec::new();
    for i in 0..elems.len() {
        for j in i..elems.len() {
            if ortho[i][j] {
                pairs.push((i, j));
            }
        }
    }
    let decs = unit_decompositions(&elems, &ortho, &ranks);
    let mut cs = ConstraintSystem::new(elems.len(), pairs, decs);
    if kept.len() < list.len() {
        cs.warnings.push(format!("{} duplicate idempotents dropped", list.len() - kept.len()));
    }
    Ok((cs, elems))
}
