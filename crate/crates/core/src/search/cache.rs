//! JSON-lines memo file for computed f values. Append-only, keyed by n,
//! stamped with the engine version; entries from other versions or entries
//! whose witness fails re-validation are ignored and recomputed.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::Result;

use super::validate_witness;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheLine {
    n: u64,
    f: u64,
    witness: String,
    engine: String,
}

/// A memoized f value with its certifying coloring.
#[derive(Debug, Clone)]
pub struct CachedF {
    pub n: u64,
    pub f: u64,
    pub witness: Coloring,
}

#[derive(Debug, Default)]
pub struct FCache {
    path: Option<PathBuf>,
    entries: BTreeMap<u64, CachedF>,
}

impl FCache {
    /// Cache that lives only for this process.
    pub fn in_memory() -> FCache {
        FCache::default()
    }

    /// Loads (or starts) an on-disk cache. Unreadable lines, foreign engine
    /// versions, and witnesses that fail re-validation are skipped.
    pub fn open(path: &Path) -> Result<FCache> {
        let mut cache = FCache {
            path: Some(path.to_path_buf()),
            entries: BTreeMap::new(),
        };
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let Ok(entry) = serde_json::from_str::<CacheLine>(line) else {
                continue;
            };
            if entry.engine != ENGINE_VERSION {
                continue;
            }
            let Ok(witness) = Coloring::parse(&entry.witness) else {
                continue;
            };
            if witness.len() as u64 != entry.n || validate_witness(&witness, entry.f).is_err() {
                continue;
            }
            cache.entries.insert(
                entry.n,
                CachedF {
                    n: entry.n,
                    f: entry.f,
                    witness,
                },
            );
        }
        Ok(cache)
    }

    pub fn get(&self, n: u64) -> Option<&CachedF> {
        self.entries.get(&n)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Records a value, appending to the backing file when one is attached.
    pub fn put(&mut self, value: CachedF) -> Result<()> {
        if let Some(path) = &self.path {
            let line = CacheLine {
                n: value.n,
                f: value.f,
                witness: value.witness.to_text()?.trim_end().to_string(),
                engine: ENGINE_VERSION.to_string(),
            };
            let mut file = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(file, "{}", serde_json::to_string(&line)?)?;
        }
        self.entries.insert(value.n, value);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Color;

    #[test]
    fn round_trip_and_version_filtering() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.jsonl");

        let mut cache = FCache::open(&path).unwrap();
        assert!(cache.is_empty());
        cache
            .put(CachedF {
                n: 4,
                f: 2,
                witness: Coloring::new(1, vec![Color(0), Color(0), Color(1), Color(1)]),
            })
            .unwrap();

        // Stale engine stamps are ignored on reload.
        {
            use std::io::Write;
            let mut file = OpenOptions::new().append(true).open(&path).unwrap();
            writeln!(
                file,
                r#"{{"n":5,"f":2,"witness":"RRGGB","engine":"0.0.0-other"}}"#
            )
            .unwrap();
        }

        let reloaded = FCache::open(&path).unwrap();
        assert_eq!(reloaded.len(), 1);
        assert_eq!(reloaded.get(4).unwrap().f, 2);
        assert!(reloaded.get(5).is_none());
    }

    #[test]
    fn invalid_witnesses_are_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.jsonl");
        {
            use std::io::Write;
            let mut file = std::fs::File::create(&path).unwrap();
            // "RGB" contains a rainbow AP(3), so it cannot certify f(3)=1.
            writeln!(
                file,
                r#"{{"n":3,"f":1,"witness":"RGB","engine":"{ENGINE_VERSION}"}}"#
            )
            .unwrap();
        }
        let cache = FCache::open(&path).unwrap();
        assert!(cache.get(3).is_none());
    }
}
