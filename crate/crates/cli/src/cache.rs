//! Persistent A-set cache.
//!
//! One JSON file holds entries addressed by the SHA-256 of the canonical
//! computation key. Every entry is replayed against its certificates before
//! use, so a damaged entry can only cost a recomputation. A file with an
//! unknown version or unparsable content is ignored with a warning and
//! replaced on the next save.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use linkage::{ASet, ASetKey, ASetStore, RootSystem, Weight};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_FILE: &str = "aset-cache.json";
pub const CACHE_DIR_ENV: &str = "LINKAGE_CACHE_DIR";

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, Entry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    /// Elements with zero-based certificate positions.
    elements: Vec<(String, Vec<usize>)>,
}

/// Cache directory from the environment: `$LINKAGE_CACHE_DIR`, else
/// `$XDG_CACHE_HOME/linkage`, else `$HOME/.cache/linkage`.
pub fn default_dir() -> Option<PathBuf> {
    let var = |k: &str| {
        std::env::var_os(k)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    };
    var(CACHE_DIR_ENV)
        .or_else(|| var("XDG_CACHE_HOME").map(|p| p.join("linkage")))
        .or_else(|| var("HOME").map(|p| p.join(".cache").join("linkage")))
}

pub fn content_address(key: &ASetKey) -> String {
    let digest = Sha256::digest(key.canonical().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub struct FileCache<'a> {
    rs: &'a RootSystem,
    path: PathBuf,
    entries: Mutex<BTreeMap<String, Entry>>,
    warnings: Mutex<Vec<String>>,
    hits: AtomicUsize,
    misses: AtomicUsize,
    dirty: AtomicBool,
}

impl<'a> FileCache<'a> {
    /// Opens `dir/aset-cache.json`; a missing file is an empty cache.
    pub fn open(dir: &Path, rs: &'a RootSystem) -> Self {
        let path = dir.join(CACHE_FILE);
        let mut warnings = Vec::new();
        let entries = match fs::read_to_string(&path) {
            Err(_) => BTreeMap::new(),
            Ok(text) => match serde_json::from_str::<CacheFile>(&text) {
                Ok(f) if f.version == CACHE_VERSION => f.entries,
                Ok(f) => {
                    warnings.push(format!(
                        "ignoring cache {}: version {} (expected {})",
                        path.display(),
                        f.version,
                        CACHE_VERSION
                    ));
                    BTreeMap::new()
                }
                Err(e) => {
                    warnings.push(format!("ignoring unreadable cache {}: {e}", path.display()));
                    BTreeMap::new()
                }
            },
        };
        // A discarded file is rewritten on the next save.
        let dirty = !warnings.is_empty();
        FileCache {
            rs,
            path,
            entries: Mutex::new(entries),
            warnings: Mutex::new(warnings),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            dirty: AtomicBool::new(dirty),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn take_warnings(&self) -> Vec<String> {
        std::mem::take(&mut *self.warnings.lock().expect("cache lock"))
    }

    /// Writes the cache if anything changed, through a temporary file.
    pub fn save(&self) -> std::io::Result<()> {
        if !self.dirty.load(Ordering::Relaxed) {
            return Ok(());
        }
        let file = CacheFile {
            version: CACHE_VERSION,
            entries: self.entries.lock().expect("cache lock").clone(),
        };
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = self
            .path
            .with_extension(format!("json.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&file).expect("serializable"))?;
        fs::rename(&tmp, &self.path)?;
        self.dirty.store(false, Ordering::Relaxed);
        Ok(())
    }

    fn rebuild(&self, key: &ASetKey, entry: &Entry) -> Result<ASet, String> {
        if entry.key != key.canonical() {
            return Err("key mismatch".into());
        }
        let letters = key
            .letters
            .iter()
            .map(|r| {
                self.rs
                    .root_index(r)
                    .ok_or_else(|| format!("{r} is not a root"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let elements = entry
            .elements
            .iter()
            .map(|(w, c)| {
                w.parse::<Weight>()
                    .map(|w| (w, c.clone()))
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        ASet::from_parts(self.rs, letters, key.mu.clone(), elements).map_err(|e| e.to_string())
    }
}

impl ASetStore for FileCache<'_> {
    fn get(&self, key: &ASetKey) -> Option<ASet> {
        let addr = content_address(key);
        let entry = self.entries.lock().expect("cache lock").get(&addr).cloned();
        let found = entry.and_then(|e| match self.rebuild(key, &e) {
            Ok(set) => Some(set),
            Err(why) => {
                self.warnings
                    .lock()
                    .expect("cache lock")
                    .push(format!("discarding cache entry {addr}: {why}"));
                None
            }
        });
        let counter = if found.is_some() {
            &self.hits
        } else {
            &self.misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    fn put(&self, key: &ASetKey, value: &ASet) {
        let entry = Entry {
            key: key.canonical(),
            elements: value
                .entries()
                .map(|(w, c)| (w.to_string(), c.to_vec()))
                .collect(),
        };
        self.entries
            .lock()
            .expect("cache lock")
            .insert(content_address(key), entry);
        self.dirty.store(true, Ordering::Relaxed);
    }
}
