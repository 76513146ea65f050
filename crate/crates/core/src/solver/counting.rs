use std::collections::HashMap;

use serde::Serialize;

use crate::enumeration::enumerate_idempotents;
use crate::matrix::{MatrixError, SquareMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingReport {
    pub p: u64,
    pub rank1_count: usize,
    /// Unordered rank-one triples summing to the identity.
    pub triples: usize,
    /// Triples through each rank-one idempotent, when this is constant.
    pub per_idempotent: Option<usize>,
    pub constant: bool,
    pub divisible_by_3: bool,
    /// Colorable rank-one layer would need `3 · |white| = rank1_count`.
    pub uncolorable_by_counting: bool,
}

/// Rank-one idempotent triples summing to `I` in `M_3(F_p)`; an obstruction
/// exists when every idempotent lies in the same number of triples and 3 does
/// not divide their count.
pub fn counting_obstruction_check(p: u64) -> Result<CountingReport, MatrixError> {
    let inv = enumerate_idempotents(p, 3)?;
    let rank1 = inv.rank(1);
    let index: HashMap<&SquareMatrix, usize> = rank1.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let identity = SquareMatrix::identity(&inv.ring, 3);
    let mut through = vec![0usize; rank1.len()];
    let mut triples = 0;
    for i in 0..rank1.len() {
        for j in i + 1..rank1.len() {
            if !rank1[i].is_orthogonal_idempotent_pair(&rank1[j]) {
                continue;
            }
            let rest = identity.sub(&rank1[i]).sub(&rank1[j]);
            let Some(&k) = index.get(&rest) else { continue };
            if k > j && rest.is_orthogonal_idempotent_pair(&rank1[i]) && rest.is_orthogonal_idempotent_pair(&rank1[j]) {
                triples += 1;
                for t in [i, j, k] {
                    through[t] += 1;
                }
            }
        }
    }
    let constant = through.windows(2).all(|w| w[0] == w[1]);
    let divisible_by_3 = rank1.len() % 3 == 0;
    let per_idempotent = constant.then(|| through.first().copied().unwrap_or(0));
    Ok(CountingReport {
        p,
        rank1_count: rank1.len(),
        triples,
        per_idempotent,
        constant,
        divisible_by_3,
        uncolorable_by_counting: constant && per_idempotent != Some(0) && !divisible_by_3,
    })
}
