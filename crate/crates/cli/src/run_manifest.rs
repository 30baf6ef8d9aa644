//! Record of a single invocation: arguments, effective parameters, and
//! digests of every file read or written.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of_bytes(path: &Path, bytes: &[u8]) -> Self {
        Self {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }

    pub fn of_file(path: &Path) -> Result<Self, CliError> {
        let bytes = fs::read(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self::of_bytes(path, &bytes))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub parameters: serde_json::Value,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

/// Collects outputs as they are written so the manifest can list them.
pub struct Recorder {
    manifest: RunManifest,
}

impl Recorder {
    pub fn new(parameters: serde_json::Value) -> Self {
        Self {
            manifest: RunManifest {
                tool: "inertia",
                version: env!("CARGO_PKG_VERSION"),
                command: std::env::args().skip(1).collect(),
                parameters,
                inputs: Vec::new(),
                outputs: Vec::new(),
            },
        }
    }

    pub fn set_parameters(&mut self, parameters: serde_json::Value) {
        self.manifest.parameters = parameters;
    }

    pub fn input(&mut self, path: &Path) -> Result<(), CliError> {
        let d = FileDigest::of_file(path)?;
        if !self.manifest.inputs.contains(&d) {
            self.manifest.inputs.push(d);
        }
        Ok(())
    }

    pub fn write(&mut self, path: &Path, contents: &[u8]) -> Result<(), CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
        }
        fs::write(path, contents).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.manifest.outputs.push(FileDigest::of_bytes(path, contents));
        Ok(())
    }

    /// Writes the manifest itself to `path`.
    pub fn finish(self, path: &Path) -> Result<PathBuf, CliError> {
        let mut text = serde_json::to_string_pretty(&self.manifest)?;
        text.push('\n');
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_path_buf(),
                source,
            })?;
        }
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(path.to_path_buf())
    }
}
