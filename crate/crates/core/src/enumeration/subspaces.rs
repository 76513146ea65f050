use crate::matrix::linalg::{null_space, rank};
use crate::matrix::ColumnVector;
use crate::scalars::{Elem, ScalarRing};

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// A subspace given by its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Vec<ColumnVector>,
}

impl Subspace {
    pub fn basis(&self) -> &[ColumnVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `{x : b^T x = 0 for every basis vector b}`.
    pub fn orthogonal_complement(&self, field: &ScalarRing, n: usize) -> Subspace {
        let rows: Vec<Vec<Elem>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        let basis = if rows.is_empty() {
            (0..n).map(|i| ColumnVector::basis(field, n, i)).collect()
        } else {
            null_space(field, &rows, n)
                .into_iter()
                .map(|v| ColumnVector::new(field.clone(), v).expect("field elements"))
                .collect()
        };
        Subspace::spanned_by(field, basis)
    }

    /// Canonical form of the span of `vectors`.
    pub fn spanned_by(field: &ScalarRing, vectors: Vec<ColumnVector>) -> Subspace {
        let mut rows: Vec<Vec<Elem>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
        let r = crate::matrix::linalg::rref(field, &mut rows);
        let basis = rows
            .into_iter()
            .take(r.len())
            .map(|c| ColumnVector::new(field.clone(), c).expect("field elements"))
            .collect();
        Subspace { basis }
    }

    pub fn contains(&self, field: &ScalarRing, v: &ColumnVector) -> bool {
        let mut rows: Vec<Vec<Elem>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        rows.push(v.coords().to_vec());
        rank(field, &rows) == self.dim()
    }

    /// `self ⊕ other = F^n`.
    pub fn is_complement_of(&self, field: &ScalarRing, other: &Subspace, n: usize) -> bool {
        if self.dim() + other.dim() != n {
            return false;
        }
        let rows: Vec<Vec<Elem>> =
            self.basis.iter().chain(&other.basis).map(|b| b.coords().to_vec()).collect();
        rows.is_empty() || rank(field, &rows) == n
    }
}

/// All `k`-dimensional subspaces of `F_q^n`, one per reduced row echelon form,
/// ordered by pivot set and then by free entries.
pub fn subspaces(field: &ScalarRing, n: usize, k: usize) -> Vec<Subspace> {
    let elems = field.elements();
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = elems.len().pow(free.len() as u32);
        for mut idx in 0..total {
            let mut rows = vec![vec![field.zero(); n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = field.one();
            }
            for &(r, c) in free.iter().rev() {
                rows[r][c] = elems[idx % elems.len()].clone();
                idx /= elems.len();
            }
            let basis = rows
                .into_iter()
                .map(|c| ColumnVector::new(field.clone(), c).expect("field elements"))
                .collect();
            out.push(Subspace { basis });
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
        assert_eq!(gaussian_binomial(3, 2, 3), 13);
        assert_eq!(gaussian_binomial(3, 4, 3), 0);
    }

    #[test]
    fn enumeration_matches_binomial() {
        for p in [2u64, 3, 5] {
            let f = ScalarRing::prime_field(p).unwrap();
            for k in 0..=3 {
                let subs = subspaces(&f, 3, k);
                assert_eq!(subs.len() as u128, gaussian_binomial(3, k as u32, p));
                let mut sorted = subs.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), subs.len());
            }
        }
    }
}
