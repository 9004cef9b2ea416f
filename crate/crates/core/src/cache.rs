//! On-disk artifact cache.
//!
//! Each artifact is a JSON envelope holding the producing configuration, a
//! SHA-256 checksum of the payload and the payload itself. Writes go to a
//! temporary file in the same directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

const FORMAT: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache artifact {path} is not valid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("checksum mismatch in cache artifact {path}")]
    Checksum { path: PathBuf },
    #[error("cache artifact {path} was produced by {found:?}, expected {expected:?}")]
    Config { path: PathBuf, expected: String, found: String },
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    format: u32,
    config: String,
    checksum: String,
    payload: serde_json::Value,
}

fn checksum(payload: &serde_json::Value) -> String {
    let bytes = serde_json::to_vec(payload).expect("serializing a JSON value cannot fail");
    hex::encode(Sha256::digest(&bytes))
}

/// Artifact store rooted at a directory, or a no-op store.
#[derive(Clone, Debug, Default)]
pub struct Cache {
    root: Option<PathBuf>,
}

/// Result of a garbage-collection pass.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GcReport {
    pub kept: usize,
    pub removed_temp: usize,
    pub removed_corrupt: usize,
}

impl Cache {
    pub fn at(root: impl Into<PathBuf>) -> Self {
        Cache { root: Some(root.into()) }
    }

    pub fn disabled() -> Self {
        Cache { root: None }
    }

    pub fn root(&self) -> Option<&Path> {
        self.root.as_deref()
    }

    fn path(&self, dir: &str, file: &str) -> Option<PathBuf> {
        self.root.as_ref().map(|r| r.join(dir).join(file))
    }

    /// Reads an artifact. A missing file is `Ok(None)`; a corrupt file or
    /// one produced under another configuration is an error.
    pub fn load<T: DeserializeOwned>(&self, dir: &str, file: &str, config: &str) -> Result<Option<T>, CacheError> {
        let Some(path) = self.path(dir, file) else { return Ok(None) };
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let env: Envelope = serde_json::from_slice(&bytes).map_err(|source| CacheError::Json { path: path.clone(), source })?;
        if env.format != FORMAT || checksum(&env.payload) != env.checksum {
            return Err(CacheError::Checksum { path });
        }
        if env.config != config {
            return Err(CacheError::Config { path, expected: config.to_string(), found: env.config });
        }
        let value = serde_json::from_value(env.payload).map_err(|source| CacheError::Json { path, source })?;
        log::debug!("cache hit {dir}/{file}");
        Ok(Some(value))
    }

    pub fn store<T: Serialize>(&self, dir: &str, file: &str, config: &str, value: &T) -> Result<(), CacheError> {
        let Some(path) = self.path(dir, file) else { return Ok(()) };
        let parent = path.parent().expect("artifact path has a parent").to_path_buf();
        let io = |source| CacheError::Io { path: parent.clone(), source };
        fs::create_dir_all(&parent).map_err(io)?;
        let payload = serde_json::to_value(value).map_err(|source| CacheError::Json { path: path.clone(), source })?;
        let env = Envelope { format: FORMAT, config: config.to_string(), checksum: checksum(&payload), payload };
        let mut tmp = tempfile::Builder::new().prefix(".tmp-").tempfile_in(&parent).map_err(io)?;
        serde_json::to_writer(&mut tmp, &env).map_err(|source| CacheError::Json { path: path.clone(), source })?;
        tmp.write_all(b"\n").map_err(io)?;
        tmp.persist(&path).map_err(|e| CacheError::Io { path: path.clone(), source: e.error })?;
        Ok(())
    }

    /// Removes leftover temporary files and artifacts whose checksum fails.
    pub fn gc(&self) -> Result<GcReport, CacheError> {
        let mut report = GcReport::default();
        let Some(root) = &self.root else { return Ok(report) };
        if !root.exists() {
            return Ok(report);
        }
        for dir in fs::read_dir(root).map_err(io(root))? {
            let dir = dir.map_err(io(root))?.path();
            if !dir.is_dir() {
                continue;
            }
            for entry in fs::read_dir(&dir).map_err(io(&dir))? {
                let path = entry.map_err(io(&dir))?.path();
                let name = path.file_name().and_then(|s| s.to_str()).unwrap_or_default();
                if name.starts_with(".tmp-") {
                    fs::remove_file(&path).map_err(io(&path))?;
                    report.removed_temp += 1;
                    continue;
                }
                let ok = fs::read(&path)
                    .ok()
                    .and_then(|b| serde_json::from_slice::<Envelope>(&b).ok())
                    .is_some_and(|env| env.format == FORMAT && checksum(&env.payload) == env.checksum);
                if ok {
                    report.kept += 1;
                } else {
                    fs::remove_file(&path).map_err(io(&path))?;
                    report.removed_corrupt += 1;
                }
            }
        }
        Ok(report)
    }
}

fn io(path: &Path) -> impl Fn(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io { path: path.to_path_buf(), source }
}
