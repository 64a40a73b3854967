//! CSV provenance headers, config hashing and guarded output writes.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] slabk::Error),
    #[error("refusing to overwrite {0}; pass --force")]
    Exists(PathBuf),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 validation, 3 solver, 4 I/O.
    pub fn exit_code(&self) -> u8 {
        use slabk::Error as E;
        match self {
            CliError::Core(E::Io(_)) | CliError::Exists(_) | CliError::Io { .. } => 4,
            CliError::Core(E::Solver { .. } | E::NoRoot { .. } | E::Degenerate(_) | E::SingularBasin { .. } | E::Training(_)) => 3,
            CliError::Core(_) | CliError::Usage(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Hash of the command configuration (output paths excluded) and the bytes
/// of every input it read.
pub fn config_hash<T: Serialize>(cmd: &str, config: &T, inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    h.update(cmd.as_bytes());
    h.update(serde_json::to_vec(config).expect("config serializes"));
    for bytes in inputs {
        h.update(Sha256::digest(bytes));
    }
    hex::encode(h.finalize())
}

/// Provenance lines written at the top of every CSV.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub cmd: &'static str,
    pub hash: String,
    pub extra: Vec<String>,
}

impl Provenance {
    pub fn new(cmd: &'static str, hash: String) -> Self {
        Provenance { cmd, hash, extra: Vec::new() }
    }

    pub fn lines(&self, units: &str) -> Vec<String> {
        let mut v = vec![format!("slabk {VERSION} {}", self.cmd), format!("config-hash: sha256:{}", self.hash), format!("units: {units}")];
        v.extend(self.extra.iter().cloned());
        v
    }

    /// CSV text with the provenance header.
    pub fn csv(&self, units: &str, header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
        let mut out: String = self.lines(units).iter().map(|l| format!("# {l}\n")).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).map_err(slabk::Error::from)?;
        for r in rows {
            w.write_record(r).map_err(slabk::Error::from)?;
        }
        let body = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        Ok(out)
    }
}

/// Fails if any output exists and `force` is off.
pub fn guard_outputs(paths: &[&Path], force: bool) -> CliResult<()> {
    if !force {
        if let Some(p) = paths.iter().find(|p| p.exists()) {
            return Err(CliError::Exists(p.to_path_buf()));
        }
    }
    Ok(())
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    }
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.into(), source })
}

pub fn num(v: f64) -> String {
    v.to_string()
}
