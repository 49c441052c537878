//! Content-addressed disk cache for command payloads.
//!
//! Each entry lives in `<dir>/<sha256(key)>.json` and stores the key, the
//! payload text, and the SHA-256 of the payload. A read whose key or hash
//! does not match is treated as a miss and the entry is rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub spec: String,
    pub kind: String,
    pub n: usize,
}

impl CacheKey {
    pub fn new(spec: impl Into<String>, kind: impl Into<String>, n: usize) -> Self {
        Self {
            spec: spec.into(),
            kind: kind.into(),
            n,
        }
    }

    fn file_name(&self) -> String {
        let text = format!("{}\u{0}{}\u{0}{}", self.spec, self.kind, self.n);
        format!("{}.json", sha256_hex(text.as_bytes()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    pub hash: String,
    pub payload: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// An entry existed but failed its key or hash check.
    Corrupt,
    Disabled,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn path_for(&self, key: &CacheKey) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(key.file_name()))
    }

    fn load(path: &Path, key: &CacheKey) -> Stored {
        let Ok(text) = fs::read_to_string(path) else {
            return Stored::Absent;
        };
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(e) if e.key == *key && e.hash == sha256_hex(e.payload.as_bytes()) => Stored::Valid(e.payload),
            _ => Stored::Invalid,
        }
    }

    fn store(path: &Path, key: &CacheKey, payload: &str) -> Result<()> {
        let dir = path.parent().expect("cache files live in a directory");
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let entry = CacheEntry {
            key: key.clone(),
            hash: sha256_hex(payload.as_bytes()),
            payload: payload.to_owned(),
        };
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&entry)?)
            .with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }

    /// Cached payload for `key`, or the result of `compute`, which is then
    /// written back. Failing to write the cache is logged, not fatal.
    pub fn get_or_compute(
        &self,
        key: &CacheKey,
        compute: impl FnOnce() -> Result<String>,
    ) -> Result<(String, Lookup)> {
        let Some(path) = self.path_for(key) else {
            return Ok((compute()?, Lookup::Disabled));
        };
        let lookup = match Self::load(&path, key) {
            Stored::Valid(payload) => {
                log::info!("cache hit {}", path.display());
                return Ok((payload, Lookup::Hit));
            }
            Stored::Absent => Lookup::Miss,
            Stored::Invalid => {
                log::warn!("discarding corrupt cache entry {}", path.display());
                Lookup::Corrupt
            }
        };
        let payload = compute()?;
        if let Err(e) = Self::store(&path, key, &payload) {
            log::warn!("{e:#}");
        }
        Ok((payload, lookup))
    }
}

enum Stored {
    Valid(String),
    Absent,
    Invalid,
}
