//! Output directory handling and the run manifest.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Serialize};

use crate::error::CliError;

/// Record of one invocation, written after every other output.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: String,
    pub seed: u64,
    pub out_dir: String,
    pub files: Vec<String>,
    pub tool_version: &'static str,
}

/// Collects the files a command writes into its output directory.
pub struct OutDir {
    root: PathBuf,
    files: Vec<String>,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(OutDir {
            root: root.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    /// Creates `name` and hands a buffered writer to `write`.
    pub fn write_with<F>(&mut self, name: &str, write: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut BufWriter<fs::File>, &Path) -> Result<(), CliError>,
    {
        let path = self.path(name);
        let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
        let mut out = BufWriter::new(file);
        write(&mut out, &path)?;
        out.flush().map_err(|e| CliError::io(&path, e))?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        self.write_with(name, |out, path| {
            serde_json::to_writer_pretty(&mut *out, value)
                .map_err(|e| CliError::Invariant(format!("serializing {}: {e}", path.display())))?;
            out.write_all(b"\n").map_err(|e| CliError::io(path, e))
        })
    }

    /// Writes `manifest.json` listing everything written so far.
    pub fn finish(mut self, command: &str, config: &Path, seed: u64) -> Result<(), CliError> {
        let manifest = RunManifest {
            command: command.to_string(),
            config: config.display().to_string(),
            seed,
            out_dir: self.root.display().to_string(),
            files: self.files.clone(),
            tool_version: env!("CARGO_PKG_VERSION"),
        };
        self.write_json("manifest.json", &manifest)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))
}
