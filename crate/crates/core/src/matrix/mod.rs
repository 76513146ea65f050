//! Exact square matrices and column vectors over a [`ScalarRing`].

mod construct;
mod json;
pub mod linalg;
mod vector;

use std::fmt;

use thiserror::Error;

use crate::scalars::{Elem, ScalarError, ScalarRing};

pub use construct::{
    corner_compress, corner_embed, entrywise_hom, idempotent_from_basis, idempotent_from_spaces,
    permutation_matrix, project_vector,
};
pub use json::{parse_scalar_lit, BasisJson, MatrixJson, ScalarLit, VectorJson};
pub use vector::ColumnVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {0} vs {1}")]
    ShapeMismatch(usize, usize),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("vector is isotropic (v^T v = 0)")]
    IsotropicVector,
    #[error("zero vector")]
    ZeroVector,
    #[error("columns do not form a basis over {0}: determinant {1}")]
    NotABasis(String, String),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("matrix is not supported on the corner deleting index {0}")]
    NotInCorner(usize),
    #[error("entry {0} has a denominator that is not invertible in {1}")]
    DenominatorNotInvertible(String, String),
    #[error("matrix is not invertible over {0}")]
    NotInvertible(String),
    #[error("dimension {0} exceeds the supported cap {1}")]
    DimensionCap(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// An `n x n` matrix stored row-major; all entries live in `ring`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    ring: ScalarRing,
    n: usize,
    entries: Vec<Elem>,
}

impl PartialOrd for SquareMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Entry-lexicographic order (row-major); dimension first.
impl Ord for SquareMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n.cmp(&other.n).then_with(|| self.entries.cmp(&other.entries))
    }
}

impl SquareMatrix {
    pub fn new(ring: ScalarRing, n: usize, entries: Vec<Elem>) -> Result<Self, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::ShapeMismatch(entries.len(), n * n));
        }
        if let Some(bad) = entries.iter().find(|e| !ring.contains(e)) {
            return Err(ScalarError::NotInRing(format!("{bad:?}"), ring.to_string()).into());
        }
        Ok(SquareMatrix { ring, n, entries })
    }

    pub(crate) fn from_parts(ring: ScalarRing, n: usize, entries: Vec<Elem>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        SquareMatrix { ring, n, entries }
    }

    pub fn from_fn(ring: &ScalarRing, n: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        SquareMatrix { ring: ring.clone(), n, entries }
    }

    pub fn from_i64_rows(ring: &ScalarRing, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        Self::from_fn(ring, n, |i, j| ring.from_i64(rows[i][j]))
    }

    pub fn zero(ring: &ScalarRing, n: usize) -> Self {
        Self::from_fn(ring, n, |_, _| ring.zero())
    }

    pub fn identity(ring: &ScalarRing, n: usize) -> Self {
        Self::from_fn(ring, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    /// Matrix unit `E_ij` (0-based).
    pub fn unit(ring: &ScalarRing, n: usize, i: usize, j: usize) -> Self {
        Self::from_fn(ring, n, |a, b| if (a, b) == (i, j) { ring.one() } else { ring.zero() })
    }

    pub fn diagonal(ring: &ScalarRing, diag: &[Elem]) -> Self {
        let n = diag.len();
        Self::from_fn(ring, n, |i, j| if i == j { diag[i].clone() } else { ring.zero() })
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> ColumnVector {
        ColumnVector::from_parts(self.ring.clone(), (0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    fn check_compatible(&self, other: &Self) -> Result<(), MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::ShapeMismatch(self.n, other.n));
        }
        if self.ring != other.ring {
            return Err(MatrixError::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        Ok(self.add(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        Ok(self.sub(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        Ok(self.mul(other))
    }

    /// Panics on shape or ring mismatch; see [`Self::checked_add`].
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "shape mismatch");
        let r = &self.ring;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| r.add(a, b)).collect();
        Self::from_parts(r.clone(), self.n, entries)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "shape mismatch");
        let r = &self.ring;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| r.sub(a, b)).collect();
        Self::from_parts(r.clone(), self.n, entries)
    }

    pub fn neg(&self) -> Self {
        let r = &self.ring;
        Self::from_parts(r.clone(), self.n, self.entries.iter().map(|a| r.neg(a)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "shape mismatch");
        let (n, r) = (self.n, &self.ring);
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = r.zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if r.is_zero(a) || r.is_zero(b) {
                        continue;
                    }
                    acc = r.add(&acc, &r.mul(a, b));
                }
                out.push(acc);
            }
        }
        Self::from_parts(r.clone(), n, out)
    }

    pub fn scale(&self, c: &Elem) -> Self {
        let r = &self.ring;
        Self::from_parts(r.clone(), self.n, self.entries.iter().map(|a| r.mul(a, c)).collect())
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::identity(&self.ring, self.n);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Elem {
        (0..self.n).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, self.get(i, i)))
    }

    pub fn mul_vec(&self, v: &ColumnVector) -> ColumnVector {
        assert_eq!(self.n, v.n(), "shape mismatch");
        let r = &self.ring;
        let coords = (0..self.n)
            .map(|i| {
                (0..self.n).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(self.get(i, k), &v.coords()[k])))
            })
            .collect();
        ColumnVector::from_parts(r.clone(), coords)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring, self.n)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Both idempotent with `AB = BA = 0`.
    pub fn is_orthogonal_idempotent_pair(&self, other: &Self) -> bool {
        self.is_idempotent()
            && other.is_idempotent()
            && self.mul(other).is_zero()
            && other.mul(self).is_zero()
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.ring.fraction_field(), &self.rows())
    }

    pub fn rank_of_idempotent(&self) -> Result<usize, MatrixError> {
        if !self.is_idempotent() {
            return Err(MatrixError::NotIdempotent);
        }
        Ok(self.rank())
    }

    /// Determinant; lies in the ring because it is a polynomial in the entries.
    pub fn determinant(&self) -> Elem {
        linalg::determinant(&self.ring.fraction_field(), &self.rows())
    }

    /// Inverse over `ring` itself, failing unless the determinant is a unit.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let det = self.determinant();
        if !self.ring.is_unit(&det) {
            return Err(MatrixError::NotInvertible(self.ring.to_string()));
        }
        let inv = linalg::inverse(&self.ring.fraction_field(), &self.rows())
            .ok_or_else(|| MatrixError::NotInvertible(self.ring.to_string()))?;
        let entries: Vec<Elem> = inv.into_iter().flatten().collect();
        Self::new(self.ring.clone(), self.n, entries)
    }

    pub fn format_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|e| self.ring.format(e)).collect())
            .collect()
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.format_rows().iter().map(|r| r.join(" ")).collect();
        write!(f, "[{}]@{}", rows.join("; "), self.ring)
    }
}
