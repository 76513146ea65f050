//! Run reports and the artifact files that back them.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Artifact {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdicts: serde_json::Value,
    pub certificates: Vec<Artifact>,
    pub wall_time_ms: u128,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Output directory plus the artifacts written so far.
#[derive(Debug)]
pub struct ArtifactSink {
    dir: PathBuf,
    written: Vec<Artifact>,
}

impl ArtifactSink {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
        Ok(ArtifactSink { dir: dir.to_path_buf(), written: Vec::new() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn write_bytes(&mut self, name: &str, bytes: &[u8]) -> Result<Artifact, CliError> {
        let path = self.dir.join(name);
        self.write_at(&path, bytes)
    }

    /// Writes to an explicit path rather than into the output directory.
    pub fn write_at(&mut self, path: &Path, bytes: &[u8]) -> Result<Artifact, CliError> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(|e| CliError::Input(format!("cannot create {}: {e}", parent.display())))?;
        }
        std::fs::write(path, bytes).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        let art = Artifact { path: path.display().to_string(), sha256: sha256_hex(bytes) };
        self.written.push(art.clone());
        Ok(art)
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<Artifact, CliError> {
        let mut text = serde_json::to_string_pretty(value).expect("artifact serializes");
        text.push('\n');
        self.write_bytes(name, text.as_bytes())
    }

    pub fn into_artifacts(self) -> Vec<Artifact> {
        self.written
    }
}
