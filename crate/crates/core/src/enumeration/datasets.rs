//! Bundled configurations and the externally supplied Schütte vectors.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::matrix::linalg::rank;
use crate::matrix::{project_vector, BasisJson, ColumnVector, MatrixError, SquareMatrix};
use crate::scalars::{parse_ring, ScalarRing};

const F5_25: &str = include_str!("../../data/f5_25.json");
const Z28: &str = include_str!("../../data/z28.json");
const Z28_TRIPLES: &str = include_str!("../../data/z28_triples.json");

pub const SCHUTTE_FILE: &str = "schutte_vectors.json";

pub const SCHUTTE_HELP: &str = "the 33-vector configuration over Z[1/30] is not bundled; transcribe \
its integer coordinate triples from Schütte's construction (as presented by Bub) into \
schutte_vectors.json as {\"vectors\": [[x, y, z], ...]}; every squared norm must divide 30";

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("unknown dataset {0:?}")]
    Unknown(String),
    #[error("missing external data at {path}: {help}")]
    MissingExternalData { path: String, help: &'static str },
    #[error("invalid dataset: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Vectors with provenance; destined for [`project_vector`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorConfiguration {
    pub name: String,
    pub source: String,
    pub ring: ScalarRing,
    pub vectors: Vec<ColumnVector>,
}

impl VectorConfiguration {
    /// Index of the first proportional pair, if any.
    pub fn proportional_pair(&self) -> Option<(usize, usize)> {
        let field = self.ring.fraction_field();
        for i in 0..self.vectors.len() {
            for j in i + 1..self.vectors.len() {
                let rows = vec![self.vectors[i].coords().to_vec(), self.vectors[j].coords().to_vec()];
                if rank(&field, &rows) < 2 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn isotropic(&self) -> Option<usize> {
        self.vectors.iter().position(|v| self.ring.is_zero(&v.dot(v)))
    }

    pub fn projections(&self) -> Result<Vec<SquareMatrix>, MatrixError> {
        self.vectors.iter().map(project_vector).collect()
    }
}

/// A labeled list of idempotents given in basis form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSet {
    pub name: String,
    pub ring: ScalarRing,
    pub labels: Vec<String>,
    /// `(range, kernel)` columns as displayed.
    pub bases: Vec<(Vec<ColumnVector>, Vec<ColumnVector>)>,
    pub matrices: Vec<SquareMatrix>,
}

/// A pair list entry: `a` and `b` share one index; the union is a triple that
/// is orthogonal only after reduction.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct PairClue {
    pub label: String,
    pub a: [usize; 2],
    pub b: [usize; 2],
}

/// Triples and pairs with 1-based indices into `z28`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleList {
    pub triples: Vec<[usize; 3]>,
    pub pairs: Vec<PairClue>,
}

#[derive(Deserialize)]
struct VectorFile {
    name: String,
    ring: String,
    vectors: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct IdempotentEntry {
    label: String,
    #[serde(flatten)]
    basis: BasisJson,
}

#[derive(Deserialize)]
struct IdempotentFile {
    name: String,
    ring: String,
    idempotents: Vec<IdempotentEntry>,
}

#[derive(Deserialize)]
struct TripleFile {
    triples: Vec<[usize; 3]>,
    pairs: Vec<PairClue>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SchutteFile {
    Wrapped { vectors: Vec<Vec<i64>> },
    Bare(Vec<Vec<i64>>),
}

fn vectors_from_rows(ring: &ScalarRing, rows: &[Vec<i64>]) -> Result<Vec<ColumnVector>, DatasetError> {
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) || n == 0 {
        return Err(DatasetError::Invalid("vectors must be nonempty and of one length".into()));
    }
    Ok(rows.iter().map(|r| ColumnVector::from_i64(ring, r)).collect())
}

fn parse_vector_file(text: &str, source: &str) -> Result<VectorConfiguration, DatasetError> {
    let file: VectorFile = serde_json::from_str(text)?;
    let ring = parse_ring(&file.ring).map_err(MatrixError::from)?;
    let vectors = vectors_from_rows(&ring, &file.vectors)?;
    Ok(VectorConfiguration { name: file.name, source: source.into(), ring, vectors })
}

/// The 25 vectors over `F_5` whose projections are all rank-one projections.
pub fn f5_25() -> VectorConfiguration {
    parse_vector_file(F5_25, "bundled").expect("bundled f5_25 parses")
}

/// 28 rank-one integer idempotents reducing onto the rank-one idempotents of `M_3(F_2)`.
pub fn z28() -> IdempotentSet {
    let file: IdempotentFile = serde_json::from_str(Z28).expect("bundled z28 parses");
    let ring = parse_ring(&file.ring).expect("bundled ring");
    let mut set = IdempotentSet { name: file.name, ring: ring.clone(), labels: vec![], bases: vec![], matrices: vec![] };
    for entry in file.idempotents {
        let range = entry.basis.range.iter().map(|v| ColumnVector::from_i64(&ring, &lits(v))).collect();
        let kernel = entry.basis.kernel.iter().map(|v| ColumnVector::from_i64(&ring, &lits(v))).collect();
        set.matrices.push(entry.basis.to_matrix(&ring).expect("bundled bases are unimodular"));
        set.labels.push(entry.label);
        set.bases.push((range, kernel));
    }
    set
}

fn lits(v: &[crate::matrix::ScalarLit]) -> Vec<i64> {
    v.iter()
        .map(|l| match l {
            crate::matrix::ScalarLit::Int(i) => *i,
            crate::matrix::ScalarLit::Text(t) => t.parse().expect("integer literal"),
        })
        .collect()
}

pub fn z28_triples() -> TripleList {
    let file: TripleFile = serde_json::from_str(Z28_TRIPLES).expect("bundled triples parse");
    TripleList { triples: file.triples, pairs: file.pairs }
}

/// Loads and validates user-supplied Schütte vectors as a configuration over `Z[1/30]`.
pub fn load_schutte(path: &Path) -> Result<VectorConfiguration, DatasetError> {
    if !path.exists() {
        return Err(DatasetError::MissingExternalData { path: path.display().to_string(), help: SCHUTTE_HELP });
    }
    let text = std::fs::read_to_string(path)?;
    let rows = match serde_json::from_str::<SchutteFile>(&text)? {
        SchutteFile::Wrapped { vectors } | SchutteFile::Bare(vectors) => vectors,
    };
    validate_schutte_rows(&rows)?;
    let ring = ScalarRing::localization(30);
    let cfg = VectorConfiguration {
        name: "schutte".into(),
        source: path.display().to_string(),
        vectors: vectors_from_rows(&ring, &rows)?,
        ring,
    };
    if let Some((i, j)) = cfg.proportional_pair() {
        return Err(DatasetError::Invalid(format!("vectors {} and {} are proportional", i + 1, j + 1)));
    }
    Ok(cfg)
}

/// Every vector is a nonzero integer triple whose squared norm divides 30.
pub fn validate_schutte_rows(rows: &[Vec<i64>]) -> Result<(), DatasetError> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != 3 {
            return Err(DatasetError::Invalid(format!("vector {} is not a triple", i + 1)));
        }
        let norm: i64 = r.iter().map(|x| x * x).sum();
        if norm == 0 || 30 % norm != 0 {
            return Err(DatasetError::Invalid(format!("vector {} has squared norm {norm}, not a divisor of 30", i + 1)));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub enum Bundled {
    Vectors(VectorConfiguration),
    Idempotents(IdempotentSet),
    Triples(TripleList),
}

/// `"f5_25"`, `"z28"`, `"z28_triples"`, or `"schutte"` (read from `schutte_path`).
pub fn load_bundled(name: &str, schutte_path: Option<&Path>) -> Result<Bundled, DatasetError> {
    match name {
        "f5_25" => Ok(Bundled::Vectors(f5_25())),
        "z28" => Ok(Bundled::Idempotents(z28())),
        "z28_triples" => Ok(Bundled::Triples(z28_triples())),
        "schutte" => {
            let path = schutte_path.unwrap_or(Path::new(SCHUTTE_FILE));
            Ok(Bundled::Vectors(load_schutte(path)?))
        }
        other => Err(DatasetError::Unknown(other.into())),
    }
}
