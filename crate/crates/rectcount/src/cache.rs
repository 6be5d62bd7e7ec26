//! On-disk sequence cache: versioned JSON, one file per (sequence, args).

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use rectcount_core::Natural;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "RECTCOUNT_CACHE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub sequence: String,
    pub args: BTreeMap<String, String>,
    pub values: Vec<String>,
    pub fingerprint: String,
}

impl CacheEntry {
    pub fn new(sequence: &str, args: &BTreeMap<String, String>, fingerprint: &str, values: &[Natural]) -> Self {
        CacheEntry {
            schema_version: SCHEMA_VERSION,
            sequence: sequence.to_owned(),
            args: args.clone(),
            values: values.iter().map(|v| v.to_string()).collect(),
            fingerprint: fingerprint.to_owned(),
        }
    }

    pub fn decode(&self) -> Option<Vec<Natural>> {
        self.values.iter().map(|v| v.parse::<BigUint>().ok()).collect()
    }
}

/// Flag, then environment, then `.cache`.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(dir) = flag {
        return dir.to_path_buf();
    }
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => PathBuf::from(".cache"),
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, sequence: &str, args: &BTreeMap<String, String>) -> PathBuf {
        let mut name = sanitize(sequence);
        for (k, v) in args {
            name.push_str(&format!("__{}-{}", sanitize(k), sanitize(v)));
        }
        self.dir.join(format!("{name}.json"))
    }

    /// Values `0..=max_n` if a matching entry holds at least that many.
    pub fn load(&self, sequence: &str, args: &BTreeMap<String, String>, fingerprint: &str, max_n: usize) -> Option<Vec<Natural>> {
        let text = fs::read_to_string(self.path_for(sequence, args)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.schema_version != SCHEMA_VERSION
            || entry.fingerprint != fingerprint
            || entry.sequence != sequence
            || &entry.args != args
            || entry.values.len() <= max_n
        {
            return None;
        }
        let mut values = entry.decode()?;
        values.truncate(max_n + 1);
        Some(values)
    }

    pub fn store(&self, sequence: &str, args: &BTreeMap<String, String>, fingerprint: &str, values: &[Natural]) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(sequence, args);
        // never replace a longer table with a shorter one
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(old) = serde_json::from_str::<CacheEntry>(&text) {
                if old.schema_version == SCHEMA_VERSION && old.fingerprint == fingerprint && old.values.len() >= values.len() {
                    return Ok(());
                }
            }
        }
        let entry = CacheEntry::new(sequence, args, fingerprint, values);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&entry).map_err(io::Error::other)?)?;
        fs::rename(tmp, path)
    }

    /// Loads or computes `0..=max_n` and stores fresh results.
    pub fn get_or_compute(
        &self,
        sequence: &str,
        args: &BTreeMap<String, String>,
        fingerprint: &str,
        max_n: usize,
        compute: impl FnOnce() -> Vec<Natural>,
    ) -> Vec<Natural> {
        if let Some(v) = self.load(sequence, args, fingerprint, max_n) {
            return v;
        }
        let values = compute();
        // a read-only cache directory only costs the recomputation
        let _ = self.store(sequence, args, fingerprint, &values);
        values
    }

    pub fn try_get_or_compute<E>(
        &self,
        sequence: &str,
        args: &BTreeMap<String, String>,
        fingerprint: &str,
        max_n: usize,
        compute: impl FnOnce() -> Result<Vec<Natural>, E>,
    ) -> Result<Vec<Natural>, E> {
        if let Some(v) = self.load(sequence, args, fingerprint, max_n) {
            return Ok(v);
        }
        let values = compute()?;
        let _ = self.store(sequence, args, fingerprint, &values);
        Ok(values)
    }
}

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '.' { c } else { '_' }).collect()
}
