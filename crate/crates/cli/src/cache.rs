//! Append-only JSON-lines cache of Brill-Noether scans.
//!
//! One entry per line; when a key appears twice the later line wins, which
//! is how corrected entries replace stale ones without rewriting the file.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use bincurve_core::algebra::FieldCtx;
use bincurve_core::brill_noether::BnQuery;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_DIR_ENV: &str = "BINCURVE_CACHE_DIR";
const FILE_NAME: &str = "bn.jsonl";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub count: u64,
    pub witnesses: Vec<Vec<u64>>,
    pub witness_cap: usize,
    pub version: String,
}

impl CacheEntry {
    /// Whether the stored witnesses cover a request capped at `cap`.
    pub fn serves(&self, cap: usize) -> bool {
        self.witness_cap >= cap || self.witnesses.len() as u64 == self.count
    }
}

pub fn cache_key(curve_json: &str, field: &FieldCtx, q: BnQuery) -> String {
    let material = serde_json::to_string(&(curve_json, field, [q.md.d1, q.md.d2], q.r)).expect("key material");
    format!("{:x}", Sha256::digest(material.as_bytes()))
}

/// `$BINCURVE_CACHE_DIR`, else the user cache directory, else `.bincurve-cache`.
pub fn default_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("bincurve");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("bincurve");
    }
    PathBuf::from(".bincurve-cache")
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, CacheEntry>,
}

impl Cache {
    /// Load every well-formed line written by this version; other lines
    /// are skipped.
    pub fn open(dir: &Path) -> io::Result<Self> {
        let path = dir.join(FILE_NAME);
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                if let Ok(e) = serde_json::from_str::<CacheEntry>(&line) {
                    if e.version == bincurve_core::VERSION {
                        entries.insert(e.key.clone(), e);
                    }
                }
            }
        }
        Ok(Self { path, entries })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&CacheEntry> {
        self.entries.get(key)
    }

    pub fn append(&mut self, entry: CacheEntry) -> io::Result<()> {
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{}", serde_json::to_string(&entry).expect("cache entry"))?;
        self.entries.insert(entry.key.clone(), entry);
        Ok(())
    }
}
