//! Versioned JSON cache of point counts, keyed by decimal prime and variety
//! label. A corrupt or version-mismatched file is ignored with a warning;
//! recomputation is always safe.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::count::Variety;

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResultCache {
    version: u32,
    counts: BTreeMap<String, BTreeMap<String, u64>>,
}

impl Default for ResultCache {
    fn default() -> Self {
        Self::new()
    }
}

impl ResultCache {
    pub fn new() -> Self {
        ResultCache {
            version: CACHE_VERSION,
            counts: BTreeMap::new(),
        }
    }

    /// Loads the cache from disk. Missing files yield an empty cache
    /// silently; unreadable, unparsable, or wrong-version files yield an
    /// empty cache plus a warning for the caller to surface.
    pub fn load(path: &Path) -> (Self, Option<String>) {
        let raw = match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return (Self::new(), None),
            Err(e) => {
                return (
                    Self::new(),
                    Some(format!(
                        "cache {} unreadable ({e}); recomputing",
                        path.display()
                    )),
                )
            }
        };
        match serde_json::from_str::<ResultCache>(&raw) {
            Ok(cache) if cache.version == CACHE_VERSION => (cache, None),
            Ok(cache) => (
                Self::new(),
                Some(format!(
                    "cache {} has schema version {} (want {CACHE_VERSION}); ignoring",
                    path.display(),
                    cache.version
                )),
            ),
            Err(e) => (
                Self::new(),
                Some(format!("cache {} corrupt ({e}); ignoring", path.display())),
            ),
        }
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let mut body = serde_json::to_string_pretty(self).expect("cache serializes");
        body.push('\n');
        std::fs::write(path, body)
    }

    pub fn get(&self, p: u64, variety: Variety) -> Option<u64> {
        self.counts
            .get(&p.to_string())
            .and_then(|m| m.get(variety.label()))
            .copied()
    }

    pub fn put(&mut self, p: u64, variety: Variety, count: u64) {
        self.counts
            .entry(p.to_string())
            .or_default()
            .insert(variety.label().to_string(), count);
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}
