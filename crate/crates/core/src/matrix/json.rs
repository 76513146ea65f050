//! JSON forms: `{"ring": "GF(5)", "n": 3, "rows": [...]}`, `{"ring": .., "coords": [...]}`,
//! and basis-form idempotents `{"range": [u], "kernel": [v, w]}`.

use serde::{Deserialize, Serialize};

use crate::scalars::{parse_ring, parse_scalar, Elem, ScalarRing};

use super::{idempotent_from_spaces, ColumnVector, MatrixError, SquareMatrix};

/// A scalar written either as a JSON integer or as a scalar literal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarLit {
    Int(i64),
    Text(String),
}

pub fn parse_scalar_lit(lit: &ScalarLit, ring: &ScalarRing) -> Result<Elem, MatrixError> {
    Ok(match lit {
        ScalarLit::Int(v) => ring.from_i64(*v),
        ScalarLit::Text(s) => parse_scalar(s, ring)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: String,
    pub n: usize,
    pub rows: Vec<Vec<ScalarLit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorJson {
    pub ring: String,
    pub coords: Vec<ScalarLit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub range: Vec<Vec<ScalarLit>>,
    pub kernel: Vec<Vec<ScalarLit>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &SquareMatrix) -> Self {
        MatrixJson {
            ring: m.ring().to_string(),
            n: m.n(),
            rows: m
                .format_rows()
                .into_iter()
                .map(|r| r.into_iter().map(ScalarLit::Text).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<SquareMatrix, MatrixError> {
        let ring = parse_ring(&self.ring)?;
        if self.rows.len() != self.n {
            return Err(MatrixError::ShapeMismatch(self.rows.len(), self.n));
        }
        let mut entries = Vec::with_capacity(self.n * self.n);
        for row in &self.rows {
            if row.len() != self.n {
                return Err(MatrixError::ShapeMismatch(row.len(), self.n));
            }
            for lit in row {
                entries.push(parse_scalar_lit(lit, &ring)?);
            }
        }
        SquareMatrix::new(ring, self.n, entries)
    }
}

impl VectorJson {
    pub fn from_vector(v: &ColumnVector) -> Self {
        VectorJson {
            ring: v.ring().to_string(),
            coords: v.format().into_iter().map(ScalarLit::Text).collect(),
        }
    }

    pub fn to_vector(&self) -> Result<ColumnVector, MatrixError> {
        let ring = parse_ring(&self.ring)?;
        vector_from_lits(&self.coords, &ring)
    }
}

pub(crate) fn vector_from_lits(lits: &[ScalarLit], ring: &ScalarRing) -> Result<ColumnVector, MatrixError> {
    let coords = lits.iter().map(|l| parse_scalar_lit(l, ring)).collect::<Result<Vec<_>, _>>()?;
    ColumnVector::new(ring.clone(), coords)
}

impl BasisJson {
    pub fn to_matrix(&self, ring: &ScalarRing) -> Result<SquareMatrix, MatrixError> {
        let range = self.range.iter().map(|v| vector_from_lits(v, ring)).collect::<Result<Vec<_>, _>>()?;
        let kernel = self.kernel.iter().map(|v| vector_from_lits(v, ring)).collect::<Result<Vec<_>, _>>()?;
        idempotent_from_spaces(&range, &kernel)
    }
}
