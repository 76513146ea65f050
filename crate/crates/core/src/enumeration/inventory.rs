use std::collections::BTreeMap;

use crate::matrix::{idempotent_from_spaces, project_vector, ColumnVector, MatrixError, SquareMatrix};
use crate::scalars::ScalarRing;

use super::subspaces::{subspaces, Subspace};

/// Idempotents of `M_n(F_q)` grouped by rank, each class sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentInventory {
    pub ring: ScalarRing,
    pub n: usize,
    pub by_rank: BTreeMap<usize, Vec<SquareMatrix>>,
    /// Only symmetric idempotents (projections) are listed.
    pub symmetric_only: bool,
}

impl IdempotentInventory {
    pub fn rank(&self, r: usize) -> &[SquareMatrix] {
        self.by_rank.get(&r).map_or(&[], |v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.by_rank.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every element, ordered by rank and then entry-lexicographically.
    pub fn all(&self) -> Vec<SquareMatrix> {
        self.by_rank.values().flatten().cloned().collect()
    }

    /// Each rank class maps onto the complementary class under `e -> 1 - e`.
    pub fn is_complement_closed(&self) -> bool {
        let id = SquareMatrix::identity(&self.ring, self.n);
        self.by_rank.iter().all(|(&r, list)| {
            let other = self.rank(self.n - r);
            list.iter().all(|e| other.binary_search(&id.sub(e)).is_ok())
        })
    }
}

/// All idempotents of `M_n(F_q)`, built from complementary (range, kernel) pairs.
pub fn enumerate_idempotents(q: u64, n: usize) -> Result<IdempotentInventory, MatrixError> {
    let field = ScalarRing::prime_field(q)?;
    let mut by_rank = BTreeMap::new();
    let spaces: Vec<Vec<Subspace>> = (0..=n).map(|k| subspaces(&field, n, k)).collect();
    for r in 0..=n {
        let mut list = Vec::new();
        for range in &spaces[r] {
            for kernel in &spaces[n - r] {
                if range.is_complement_of(&field, kernel, n) {
                    list.push(from_pair(&field, n, range, kernel)?);
                }
            }
        }
        list.sort();
        by_rank.insert(r, list);
    }
    Ok(IdempotentInventory { ring: field, n, by_rank, symmetric_only: false })
}

fn from_pair(field: &ScalarRing, n: usize, range: &Subspace, kernel: &Subspace) -> Result<SquareMatrix, MatrixError> {
    if range.dim() == 0 {
        return Ok(SquareMatrix::zero(field, n));
    }
    if kernel.dim() == 0 {
        return Ok(SquareMatrix::identity(field, n));
    }
    idempotent_from_spaces(range.basis(), kernel.basis())
}

/// Representatives of lines in `F_q^n` with `v^T v != 0`, first nonzero coordinate 1.
pub fn non_isotropic_lines(field: &ScalarRing, n: usize) -> Vec<ColumnVector> {
    subspaces(field, n, 1)
        .into_iter()
        .map(|s| s.basis()[0].clone())
        .filter(|v| !field.is_zero(&v.dot(v)))
        .collect()
}

/// All symmetric idempotents of `M_n(F_q)`. Rank one comes from `P_v` over
/// canonical non-isotropic `v`; rank `r` in general from subspaces `R` with
/// `R ⊕ R^⊥ = F^n`, the kernel of a projection being the orthogonal of its range.
pub fn enumerate_projections(q: u64, n: usize) -> Result<IdempotentInventory, MatrixError> {
    let field = ScalarRing::prime_field(q)?;
    let mut by_rank = BTreeMap::new();
    for r in 0..=n {
        let mut list = Vec::new();
        if r == 1 {
            for v in non_isotropic_lines(&field, n) {
                list.push(project_vector(&v)?);
            }
        } else {
            for range in subspaces(&field, n, r) {
                let perp = range.orthogonal_complement(&field, n);
                if range.is_complement_of(&field, &perp, n) {
                    list.push(from_pair(&field, n, &range, &perp)?);
                }
            }
        }
        list.sort();
        by_rank.insert(r, list);
    }
    Ok(IdempotentInventory { ring: field, n, by_rank, symmetric_only: true })
}

/// Scales `v` so its first nonzero coordinate is 1.
pub fn canonical_vector(v: &ColumnVector) -> Result<ColumnVector, MatrixError> {
    v.canonical()
}
