//! Run manifest: one JSON document per output directory, updated after every
//! operation. It records what ran, with which configuration and seed, and the
//! SHA-256 digest of every file read or written. It deliberately holds no wall-clock
//! data, so identical runs produce identical manifests; durations go to the log.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::artifact::{read, sha256_hex, write_atomic};
use crate::{PipelineError, Result, RunConfig};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const MANIFEST_FORMAT: &str = "polycell-manifest-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    /// Relative to the output directory when the file lives inside it.
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Unique key within a manifest, e.g. `train:production`.
    pub operation: String,
    /// Workspace crates that did work for this operation.
    pub components: Vec<String>,
    pub seed: u64,
    pub config: Value,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    /// Deterministic work counters (evaluations, epochs, skipped rows, ...).
    pub counters: BTreeMap<String, u64>,
    pub summary: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format: String,
    pub toolkit_version: String,
    pub generator: String,
    /// Operations in the order they first ran; a rerun replaces its earlier record.
    pub records: Vec<RunRecord>,
    /// Latest digest of every file the runs wrote.
    pub files: BTreeMap<String, String>,
}

impl Default for Manifest {
    fn default() -> Self {
        Manifest {
            format: MANIFEST_FORMAT.to_string(),
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            generator: fcell_evolve::GENERATOR_NAME.to_string(),
            records: Vec::new(),
            files: BTreeMap::new(),
        }
    }
}

impl Manifest {
    pub fn load(dir: &Path) -> Result<Option<Self>> {
        let path = dir.join(MANIFEST_FILE);
        if !path.exists() {
            return Ok(None);
        }
        let m: Manifest =
            serde_json::from_slice(&read(&path)?).map_err(|e| PipelineError::Input {
                path: path.clone(),
                message: e.to_string(),
            })?;
        if m.format != MANIFEST_FORMAT {
            return Err(PipelineError::Input {
                path,
                message: format!("unsupported manifest format `{}`", m.format),
            });
        }
        Ok(Some(m))
    }

    pub fn record(&mut self, record: RunRecord) {
        for out in &record.outputs {
            self.files.insert(out.path.clone(), out.sha256.clone());
        }
        match self
            .records
            .iter_mut()
            .find(|r| r.operation == record.operation)
        {
            Some(slot) => *slot = record,
            None => self.records.push(record),
        }
    }

    pub fn find(&self, operation: &str) -> Option<&RunRecord> {
        self.records.iter().find(|r| r.operation == operation)
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        write_atomic(&dir.join(MANIFEST_FILE), text.as_bytes())
    }
}

/// Collects the files and numbers of one operation, then commits them to the
/// directory's manifest.
#[derive(Debug)]
pub struct Session {
    dir: PathBuf,
    record: RunRecord,
}

impl Session {
    pub fn new(config: &RunConfig, operation: impl Into<String>) -> Self {
        Session {
            dir: config.output_dir.clone(),
            record: RunRecord {
                operation: operation.into(),
                components: Vec::new(),
                seed: config.seed,
                config: config.echo(),
                inputs: Vec::new(),
                outputs: Vec::new(),
                counters: BTreeMap::new(),
                summary: BTreeMap::new(),
            },
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn component(&mut self, name: &str) {
        if !self.record.components.iter().any(|c| c == name) {
            self.record.components.push(name.to_string());
        }
    }

    fn label(&self, path: &Path) -> String {
        path.strip_prefix(&self.dir)
            .unwrap_or(path)
            .to_string_lossy()
            .replace('\\', "/")
    }

    /// Read an input file, recording its digest.
    pub fn read_input(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes = read(path)?;
        self.record.inputs.push(FileDigest {
            path: self.label(path),
            sha256: sha256_hex(&bytes),
        });
        Ok(bytes)
    }

    /// Atomically write `name` inside the output directory, recording its digest.
    pub fn write_output(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.dir.join(name);
        write_atomic(&path, bytes)?;
        self.record.outputs.push(FileDigest {
            path: name.to_string(),
            sha256: sha256_hex(bytes),
        });
        Ok(path)
    }

    pub fn count(&mut self, key: &str, value: u64) {
        self.record.counters.insert(key.to_string(), value);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.record.summary.insert(key.to_string(), value.into());
    }

    /// Merge into the directory's manifest and rewrite it atomically.
    pub fn commit(self) -> Result<RunRecord> {
        let mut manifest = Manifest::load(&self.dir)?.unwrap_or_default();
        manifest.record(self.record.clone());
        manifest.save(&self.dir)?;
        Ok(self.record)
    }
}
