use std::fmt;

use crate::scalars::{Elem, ScalarError, ScalarRing};

use super::{MatrixError, SquareMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColumnVector {
    ring: ScalarRing,
    coords: Vec<Elem>,
}

impl PartialOrd for ColumnVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Coordinate-lexicographic order; vectors compared are assumed to share a ring.
impl Ord for ColumnVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl ColumnVector {
    pub fn new(ring: ScalarRing, coords: Vec<Elem>) -> Result<Self, MatrixError> {
        if let Some(bad) = coords.iter().find(|e| !ring.contains(e)) {
            return Err(ScalarError::NotInRing(format!("{bad:?}"), ring.to_string()).into());
        }
        Ok(ColumnVector { ring, coords })
    }

    pub(crate) fn from_parts(ring: ScalarRing, coords: Vec<Elem>) -> Self {
        ColumnVector { ring, coords }
    }

    pub fn from_i64(ring: &ScalarRing, coords: &[i64]) -> Self {
        ColumnVector { ring: ring.clone(), coords: coords.iter().map(|&c| ring.from_i64(c)).collect() }
    }

    /// Standard basis vector `e_i` (0-based).
    pub fn basis(ring: &ScalarRing, n: usize, i: usize) -> Self {
        let coords = (0..n).map(|k| if k == i { ring.one() } else { ring.zero() }).collect();
        ColumnVector { ring: ring.clone(), coords }
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| self.ring.is_zero(c))
    }

    /// `u^T v`.
    pub fn dot(&self, other: &Self) -> Elem {
        let r = &self.ring;
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))
    }

    /// `u v^T`.
    pub fn outer(&self, other: &Self) -> SquareMatrix {
        let r = &self.ring;
        SquareMatrix::from_fn(r, self.n(), |i, j| r.mul(&self.coords[i], &other.coords[j]))
    }

    pub fn scale(&self, c: &Elem) -> Self {
        let r = &self.ring;
        ColumnVector { ring: r.clone(), coords: self.coords.iter().map(|x| r.mul(x, c)).collect() }
    }

    /// Rescaled so the first nonzero coordinate is 1 (fields only).
    pub fn canonical(&self) -> Result<Self, MatrixError> {
        let lead = self.coords.iter().find(|c| !self.ring.is_zero(c)).ok_or(MatrixError::ZeroVector)?;
        Ok(self.scale(&self.ring.inv(lead)?))
    }

    pub fn format(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.ring.format(c)).collect()
    }
}

impl fmt::Debug for ColumnVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})@{}", self.format().join(","), self.ring)
    }
}
