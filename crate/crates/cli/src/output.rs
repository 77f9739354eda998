//! Reproducible outputs: fixed-format CSV and the run manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

/// 17 significant digits, `.` decimal separator, exponent notation;
/// byte-identical across runs and locales.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a CSV file with a header row and `\n` line endings.
pub fn write_csv(
    path: &Path,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<(), CliError> {
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    std::fs::write(path, text)
        .map_err(|e| CliError::failure(format!("cannot write {}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

/// Run provenance: the command, the fully resolved configuration, the
/// seed where one applies, the tool version, wall time, and digests of
/// every data file written. Re-running with the recorded config
/// reproduces the data files byte for byte.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub version: String,
    pub wall_time_seconds: f64,
    pub outputs: Vec<OutputDigest>,
}

impl RunManifest {
    pub fn new(command: &str, config: BTreeMap<String, String>, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            config,
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: 0.0,
            outputs: Vec::new(),
        }
    }

    pub fn add_output(&mut self, path: &Path) -> Result<(), CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::failure(format!("cannot digest {}: {e}", path.display())))?;
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.outputs.push(OutputDigest {
            path: path.display().to_string(),
            sha256: hex,
        });
        Ok(())
    }

    /// Writes the manifest next to `anchor` as
    /// `<stem>.manifest.json`.
    pub fn write_next_to(&self, anchor: &Path) -> Result<PathBuf, CliError> {
        let path = manifest_path(anchor);
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::failure(format!("cannot serialize manifest: {e}")))?;
        std::fs::write(&path, json)
            .map_err(|e| CliError::failure(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }
}

pub fn manifest_path(anchor: &Path) -> PathBuf {
    anchor.with_extension("manifest.json")
}
