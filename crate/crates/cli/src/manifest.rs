//! Run manifests and the output sink that feeds them.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Command line after the program name, as given.
    pub args: Vec<String>,
    pub params: serde_json::Value,
    pub seeds: Vec<u64>,
    pub version: String,
    pub generator: String,
    /// Input path to SHA-256 of its contents.
    pub inputs: BTreeMap<String, String>,
    /// Output file name to SHA-256 of its contents.
    pub outputs: BTreeMap<String, String>,
    pub started_ms: u64,
    pub finished_ms: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str, args: Vec<String>, params: serde_json::Value) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            args,
            params,
            seeds: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            generator: quarter::rng::GENERATOR.to_string(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            started_ms: now_ms(),
            finished_ms: 0,
        }
    }

    pub fn file_name(subcommand: &str) -> String {
        format!("{subcommand}.manifest.json")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialises") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Input(format!("manifest: {e}")))
    }
}

pub fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Reads an input file and records its hash. A missing file is a usage
/// error; unreadable contents are an input error.
pub fn read_input(path: &Path, manifest: &mut RunManifest) -> Result<String, CliError> {
    if !path.exists() {
        return Err(CliError::Usage(format!("no such file: {}", path.display())));
    }
    let bytes = fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    manifest.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
    String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))
}

/// Writes artifacts into the output directory, or to stdout without one.
pub struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> Result<Self, CliError> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(|e| CliError::Usage(format!("{}: {e}", d.display())))?;
        }
        Ok(Sink { dir })
    }

    pub fn is_stdout(&self) -> bool {
        self.dir.is_none()
    }

    pub fn emit(&self, name: &str, contents: &str, manifest: &mut RunManifest) -> Result<(), CliError> {
        match &self.dir {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                manifest
                    .outputs
                    .insert(name.to_string(), sha256_hex(contents.as_bytes()));
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(contents.as_bytes())
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
        }
        Ok(())
    }

    /// Writes the manifest next to the artifacts. Nothing is written when
    /// output goes to stdout.
    pub fn finish(&self, mut manifest: RunManifest) -> Result<(), CliError> {
        let Some(d) = &self.dir else { return Ok(()) };
        manifest.finished_ms = now_ms();
        let path = d.join(RunManifest::file_name(&manifest.subcommand));
        fs::write(&path, manifest.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}
