//! Append-only store of point counts, kept as one JSON document.
//!
//! ```json
//! { "entries": [ { "variety": "U", "p": 13, "count": 2140,
//!                  "method": "fast", "tool_version": "0.1.0" } ] }
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arith::PrimeField;
use crate::error::{Error, Result};
use crate::modularity::CountSource;
use crate::varieties::{CountMethod, CountRecord};
use crate::TOOL_VERSION;

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "BNQ_CACHE";

pub const VARIETY_U: &str = "U";
pub const VARIETY_U_SQUARE: &str = "U_square";
pub const VARIETY_CAYLEY_C1: &str = "cayley_c1";
pub const VARIETY_CAYLEY_COVER: &str = "cayley_cover";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub variety: String,
    pub p: u64,
    pub count: u64,
    pub method: CountMethod,
    pub tool_version: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
struct CacheFile {
    entries: Vec<CacheEntry>,
}

#[derive(Debug, Clone, Default)]
pub struct CountCache {
    path: Option<PathBuf>,
    entries: Vec<CacheEntry>,
    dirty: bool,
}

impl CountCache {
    /// A cache that is never written to disk.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; otherwise starts empty and creates the file
    /// on [`save`](Self::save).
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let entries = if path.exists() {
            let text = fs::read_to_string(&path)
                .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
            let file: CacheFile = serde_json::from_str(&text)
                .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
            file.entries
        } else {
            Vec::new()
        };
        let mut cache = Self {
            path: Some(path),
            entries: Vec::new(),
            dirty: false,
        };
        for e in entries {
            cache.insert(e)?;
        }
        cache.dirty = false;
        Ok(cache)
    }

    /// Path from [`CACHE_ENV`], if set and nonempty.
    pub fn env_path() -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn entries(&self) -> &[CacheEntry] {
        &self.entries
    }

    pub fn get(&self, variety: &str, p: u64) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| e.variety == variety && e.p == p)
            .map(|e| e.count)
    }

    /// Adds an entry. Re-inserting an identical count is a no-op returning
    /// `false`; a different count for the same key is an error.
    pub fn insert(&mut self, entry: CacheEntry) -> Result<bool> {
        match self.get(&entry.variety, entry.p) {
            Some(c) if c == entry.count => Ok(false),
            Some(c) => Err(Error::Cache(format!(
                "conflicting {} count at p = {}: cached {c}, new {}",
                entry.variety, entry.p, entry.count
            ))),
            None => {
                self.entries.push(entry);
                self.dirty = true;
                Ok(true)
            }
        }
    }

    pub fn record(
        &mut self,
        variety: &str,
        p: u64,
        count: u64,
        method: CountMethod,
    ) -> Result<bool> {
        self.insert(CacheEntry {
            variety: variety.to_string(),
            p,
            count,
            method,
            tool_version: TOOL_VERSION.to_string(),
        })
    }

    /// Writes the document if anything was added. Writes go to a temporary
    /// file first and are renamed into place.
    pub fn save(&mut self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        let file = CacheFile {
            entries: self.entries.clone(),
        };
        let text = serde_json::to_string_pretty(&file).map_err(|e| Error::Cache(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text + "\n")
            .and_then(|()| fs::rename(&tmp, path))
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        self.dirty = false;
        Ok(())
    }
}

/// [`CountSource`] backed by a [`CountCache`]: hits are served from the
/// cache, misses are enumerated and stored.
///
/// With `recheck`, every hit is recomputed and compared, and a disagreement
/// is an error.
pub struct CachedSource<'a> {
    cache: &'a mut CountCache,
    recheck: bool,
    pub hits: u64,
    pub misses: u64,
}

impl<'a> CachedSource<'a> {
    pub fn new(cache: &'a mut CountCache, recheck: bool) -> Self {
        Self {
            cache,
            recheck,
            hits: 0,
            misses: 0,
        }
    }
}

impl CountSource for CachedSource<'_> {
    fn record(&mut self, p: u64) -> Result<CountRecord> {
        let fld = PrimeField::new(p)?;
        fld.require_good()?;
        let cached = self
            .cache
            .get(VARIETY_U, p)
            .zip(self.cache.get(VARIETY_U_SQUARE, p));
        if let Some((n_u, n_sq)) = cached {
            self.hits += 1;
            if self.recheck {
                let fresh = CountRecord::compute(&fld)?;
                if (fresh.n_u, fresh.n_u_square) != (n_u, n_sq) {
                    return Err(Error::Inconsistent(format!(
                        "cache recheck failed at p = {p}: cached ({n_u}, {n_sq}), \
                         recomputed ({}, {})",
                        fresh.n_u, fresh.n_u_square
                    )));
                }
            }
            return Ok(CountRecord::from_counts(p, n_u, n_sq, CountMethod::Cached));
        }
        self.misses += 1;
        let rec = CountRecord::compute(&fld)?;
        self.cache.record(VARIETY_U, p, rec.n_u, rec.method)?;
        self.cache
            .record(VARIETY_U_SQUARE, p, rec.n_u_square, rec.method)?;
        Ok(rec)
    }
}

/// Looks up `(variety, p)`, computing and storing it on a miss.
pub fn get_or_compute(
    cache: &mut CountCache,
    variety: &str,
    p: u64,
    recheck: bool,
    compute: impl FnOnce() -> Result<u64>,
) -> Result<u64> {
    match cache.get(variety, p) {
        Some(c) if !recheck => Ok(c),
        Some(c) => {
            let fresh = compute()?;
            if fresh != c {
                return Err(Error::Inconsistent(format!(
                    "cache recheck failed for {variety} at p = {p}: cached {c}, recomputed {fresh}"
                )));
            }
            Ok(c)
        }
        None => {
            let fresh = compute()?;
            cache.record(variety, p, fresh, CountMethod::Fast)?;
            Ok(fresh)
        }
    }
}
