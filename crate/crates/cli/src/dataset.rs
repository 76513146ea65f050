//! Dataset names and files resolved to lists of idempotent matrices.

use std::path::{Path, PathBuf};

use kscolor::enumeration::datasets::{self, load_schutte, DatasetError, SCHUTTE_FILE};
use kscolor::enumeration::{enumerate_idempotents, enumerate_projections};
use kscolor::matrix::{entrywise_hom, project_vector, BasisJson, MatrixJson, ScalarLit, SquareMatrix};
use kscolor::morphism::matrix_key;
use kscolor::scalars::{parse_ring, ScalarRing};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::CliError;

pub const NAMES: &str = "f5_25, z28, schutte, proj-p<p>, proj1-p<p>, idpt-p<p>, idpt1-p<p>, or a JSON file";

#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub ring: ScalarRing,
    pub matrices: Vec<SquareMatrix>,
    pub labels: Option<Vec<String>>,
    /// Named decompositions, 0-based.
    pub named: Vec<(String, Vec<usize>)>,
}

impl Dataset {
    fn plain(name: &str, ring: ScalarRing, matrices: Vec<SquareMatrix>) -> Self {
        Dataset { name: name.into(), ring, matrices, labels: None, named: vec![] }
    }

    /// SHA-256 over the ring and the matrices in order.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.ring.to_string());
        for m in &self.matrices {
            h.update(b"\n");
            h.update(matrix_key(m));
        }
        hex::encode(h.finalize())
    }

    /// Same matrices with entries carried into `ring`.
    pub fn over(mut self, ring: &ScalarRing) -> Result<Self, CliError> {
        self.matrices = self.matrices.iter().map(|m| entrywise_hom(m, ring)).collect::<Result<_, _>>().map_err(input)?;
        self.ring = ring.clone();
        Ok(self)
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FileBody {
    Matrices { ring: String, matrices: Vec<Vec<Vec<ScalarLit>>> },
    Vectors { ring: String, vectors: Vec<Vec<ScalarLit>> },
    Bases { ring: String, idempotents: Vec<BasisJson> },
}

fn family(name: &str) -> Option<(&str, u64)> {
    let (kind, p) = name.split_once("-p")?;
    Some((kind, p.parse().ok()?))
}

/// Resolves a bundled name, a family name, or a JSON file path.
pub fn load(name: &str, ring: Option<&str>, schutte: Option<&Path>) -> Result<Dataset, CliError> {
    let data = match name {
        "f5_25" => {
            let cfg = datasets::f5_25();
            Dataset::plain(name, cfg.ring.clone(), cfg.projections().map_err(input)?)
        }
        "z28" => {
            let z = datasets::z28();
            let named = datasets::z28_triples()
                .triples
                .iter()
                .enumerate()
                .map(|(k, t)| (format!("O{}", k + 1), t.iter().map(|i| i - 1).collect()))
                .collect();
            Dataset { name: name.into(), ring: z.ring, matrices: z.matrices, labels: Some(z.labels), named }
        }
        "schutte" => {
            let path = schutte.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(SCHUTTE_FILE));
            let cfg = load_schutte(&path).map_err(|e| match e {
                DatasetError::MissingExternalData { .. } => CliError::Input(e.to_string()),
                other => input(other),
            })?;
            Dataset::plain(name, cfg.ring.clone(), cfg.projections().map_err(input)?)
        }
        _ => match family(name) {
            Some((kind, p)) => {
                let list = match kind {
                    "proj" => enumerate_projections(p, 3).map_err(input)?.all(),
                    "proj1" => enumerate_projections(p, 3).map_err(input)?.rank(1).to_vec(),
                    "idpt" => enumerate_idempotents(p, 3).map_err(input)?.all(),
                    "idpt1" => enumerate_idempotents(p, 3).map_err(input)?.rank(1).to_vec(),
                    _ => return Err(CliError::Input(format!("unknown dataset {name:?}; expected {NAMES}"))),
                };
                Dataset::plain(name, ScalarRing::prime_field(p).map_err(input)?, list)
            }
            None if Path::new(name).is_file() => load_file(Path::new(name), ring)?,
            None => return Err(CliError::Input(format!("unknown dataset {name:?}; expected {NAMES}"))),
        },
    };
    match ring {
        Some(r) if data.ring.to_string() != r => data.over(&parse_ring(r).map_err(input)?),
        _ => Ok(data),
    }
}

fn load_file(path: &Path, ring_override: Option<&str>) -> Result<Dataset, CliError> {
    let text = std::fs::read_to_string(path).map_err(input)?;
    let body: FileBody = serde_json::from_str(&text).map_err(input)?;
    let name = path.display().to_string();
    let parse = |r: &str| parse_ring(ring_override.unwrap_or(r)).map_err(input);
    let (ring, matrices) = match body {
        FileBody::Matrices { ring, matrices } => {
            let ring = parse(&ring)?;
            let list = matrices
                .into_iter()
                .map(|rows| MatrixJson { ring: ring.to_string(), n: rows.len(), rows }.to_matrix())
                .collect::<Result<Vec<_>, _>>()
                .map_err(input)?;
            (ring, list)
        }
        FileBody::Vectors { ring, vectors } => {
            let ring = parse(&ring)?;
            let list = vectors
                .into_iter()
                .map(|coords| {
                    kscolor::matrix::VectorJson { ring: ring.to_string(), coords }.to_vector().and_then(|v| project_vector(&v))
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(input)?;
            (ring, list)
        }
        FileBody::Bases { ring, idempotents } => {
            let ring = parse(&ring)?;
            let list = idempotents.iter().map(|b| b.to_matrix(&ring)).collect::<Result<Vec<_>, _>>().map_err(input)?;
            (ring, list)
        }
    };
    if let Some(bad) = matrices.iter().position(|m| !m.is_idempotent()) {
        return Err(CliError::Input(format!("matrix {} is not idempotent", bad + 1)));
    }
    Ok(Dataset::plain(&name, ring, matrices))
}
