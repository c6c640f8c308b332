//! Run manifest: inputs, parameters and checksums of every emitted file.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

#[derive(Serialize)]
pub struct ManifestEntry {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct RunManifest {
    pub config_sha256: String,
    pub scenarios: Vec<String>,
    pub noise: String,
    pub seed: u64,
    pub neglected_partner_max: f64,
    pub outputs: Vec<ManifestEntry>,
}

impl RunManifest {
    pub fn new(config_text: &str, scenarios: Vec<String>, noise: String, seed: u64) -> Self {
        RunManifest {
            config_sha256: sha256_hex(config_text.as_bytes()),
            scenarios,
            noise,
            seed,
            neglected_partner_max: 0.0,
            outputs: Vec::new(),
        }
    }

    /// Writes a file under `out_dir` and records its checksum.
    pub fn emit(&mut self, out_dir: &Path, name: &str, bytes: &[u8]) -> std::io::Result<PathBuf> {
        let path = out_dir.join(name);
        std::fs::write(&path, bytes)?;
        self.outputs.push(ManifestEntry {
            path: name.to_string(),
            sha256: sha256_hex(bytes),
        });
        Ok(path)
    }

    /// Serializes and writes the manifest itself.
    pub fn finish(&self, out_dir: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        std::fs::write(out_dir.join("manifest.json"), text)
    }
}
