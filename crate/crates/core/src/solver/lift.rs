use crate::matrix::{corner_embed, permutation_matrix, MatrixError, SquareMatrix};

use super::constraints::dedup_matrices;

/// Largest ambient dimension a lift may produce.
pub const MAX_DIMENSION: usize = 5;

/// `S ⊆ M_n(R)` to `S⁺ ⊆ M_{n+1}(R)`: the diagonal units followed by a copy
/// of `S` in each corner `(1 - E_ii) M_{n+1} (1 - E_ii)`, repeats dropped.
/// An uncolorable `S` gives an uncolorable `S⁺`.
pub fn lift_uncolorable(s: &[SquareMatrix]) -> Result<Vec<SquareMatrix>, MatrixError> {
    let first = s.first().ok_or(MatrixError::ShapeMismatch(0, 1))?;
    let (ring, n) = (first.ring(), first.n());
    if n + 1 > MAX_DIMENSION {
        return Err(MatrixError::DimensionCap(n + 1, MAX_DIMENSION));
    }
    if let Some(bad) = s.iter().find(|e| e.n() != n) {
        return Err(MatrixError::ShapeMismatch(bad.n(), n));
    }
    let mut out: Vec<SquareMatrix> = (0..=n).map(|i| SquareMatrix::unit(ring, n + 1, i, i)).collect();
    for i in 0..=n {
        out.extend(s.iter().map(|e| corner_embed(e, i)));
    }
    Ok(dedup_matrices(&out).0)
}

/// Permutations of `0..n` in lexicographic order, identity first.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `S` closed under conjugation by permutation matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationClosure {
    pub elements: Vec<SquareMatrix>,
    /// `(permutation index, original index)` of the first image giving each element.
    pub provenance: Vec<(usize, usize)>,
    pub permutations: Vec<Vec<usize>>,
}

/// Images `P s P^T` in permutation-major order; the identity comes first,
/// so the deduplicated `S` is a prefix.
pub fn permutation_closure(s: &[SquareMatrix]) -> PermutationClosure {
    let Some(first) = s.first() else {
        return PermutationClosure { elements: vec![], provenance: vec![], permutations: vec![] };
    };
    let perms = permutations(first.n());
    let mut seen = std::collections::HashSet::new();
    let mut elements = Vec::new();
    let mut provenance = Vec::new();
    for (g, perm) in perms.iter().enumerate() {
        let p = permutation_matrix(first.ring(), perm);
        let pt = p.transpose();
        for (i, e) in s.iter().enumerate() {
            let image = p.mul(e).mul(&pt);
            if seen.insert(image.clone()) {
                elements.push(image);
                provenance.push((g, i));
            }
        }
    }
    PermutationClosure { elements, provenance, permutations: perms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ScalarRing;

    #[test]
    fn closure_of_a_unit() {
        let q = ScalarRing::integers();
        let c = permutation_closure(&[SquareMatrix::unit(&q, 3, 0, 0)]);
        let mut got = c.elements.clone();
        got.sort();
        let mut want: Vec<_> = (0..3).map(|i| SquareMatrix::unit(&q, 3, i, i)).collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(c.permutations.len(), 6);
        assert_eq!(c.permutations[0], vec![0, 1, 2]);
    }

    #[test]
    fn lift_of_diagonal() {
        let q = ScalarRing::integers();
        let s: Vec<_> = (0..3).map(|i| SquareMatrix::unit(&q, 3, i, i)).collect();
        let lifted = lift_uncolorable(&s).unwrap();
        assert_eq!(lifted.len(), 4);
        assert!(lift_uncolorable(&[SquareMatrix::identity(&q, 5)]).is_err());
    }
}
