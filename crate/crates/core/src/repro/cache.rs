use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "TRUNCGAL_CACHE_DIR";
/// Part of every cache key; bumping it invalidates all entries.
pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "/1");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub op: String,
    pub input: String,
    pub version: String,
    pub timestamp: u64,
    pub value: Value,
}

impl CacheEntry {
    /// Parses and checks that the stored key matches its contents.
    pub fn decode(bytes: &[u8]) -> Result<CacheEntry> {
        let e: CacheEntry = serde_json::from_slice(bytes)?;
        if e.key != cache_key(&e.op, &e.input, &e.version) {
            return Err(Error::Parse("cache key does not match entry".into()));
        }
        Ok(e)
    }
}

pub fn cache_key(op: &str, input: &str, version: &str) -> String {
    let mut h = Sha256::new();
    for part in [op, input, version] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    hex::encode(h.finalize())
}

/// On-disk JSON cache. A cache without a directory computes every value.
#[derive(Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    write: Mutex<()>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl Cache {
    pub fn disabled() -> Cache {
        Cache {
            dir: None,
            write: Mutex::new(()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache {
            dir: Some(dir),
            ..Cache::disabled()
        })
    }

    /// Directory from `explicit`, else from [`CACHE_DIR_ENV`], else disabled.
    pub fn from_env(explicit: Option<&Path>) -> Result<Cache> {
        match explicit {
            Some(d) => Cache::at(d),
            None => match std::env::var_os(CACHE_DIR_ENV) {
                Some(d) => Cache::at(PathBuf::from(d)),
                None => Ok(Cache::disabled()),
            },
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    fn read(&self, key: &str) -> Option<CacheEntry> {
        let bytes = fs::read(self.path(key)?).ok()?;
        match CacheEntry::decode(&bytes) {
            Ok(e) => Some(e),
            Err(err) => {
                eprintln!("warning: corrupt cache entry {key}: {err}; recomputing");
                None
            }
        }
    }

    fn store(&self, entry: &CacheEntry) -> Result<()> {
        let Some(path) = self.path(&entry.key) else {
            return Ok(());
        };
        let bytes = serde_json::to_vec_pretty(entry)?;
        let _guard = self.write.lock().unwrap_or_else(|e| e.into_inner());
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, bytes)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn get_or_compute<F>(&self, op: &str, input: &str, compute: F) -> Result<Value>
    where
        F: FnOnce() -> Result<Value>,
    {
        let key = cache_key(op, input, CACHE_VERSION);
        if let Some(e) = self.read(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(e.value);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let value = compute()?;
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.store(&CacheEntry {
            key,
            op: op.to_string(),
            input: input.to_string(),
            version: CACHE_VERSION.to_string(),
            timestamp,
            value: value.clone(),
        })?;
        Ok(value)
    }

    /// Valid entries currently on disk, sorted by key.
    pub fn entries(&self) -> Vec<CacheEntry> {
        let Some(dir) = &self.dir else {
            return Vec::new();
        };
        let Ok(rd) = fs::read_dir(dir) else {
            return Vec::new();
        };
        let mut out: Vec<CacheEntry> = rd
            .filter_map(|e| e.ok())
            .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
            .filter_map(|e| CacheEntry::decode(&fs::read(e.path()).ok()?).ok())
            .collect();
        out.sort_by(|a, b| a.key.cmp(&b.key));
        out
    }
}
