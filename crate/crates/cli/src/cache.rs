//! On-disk cache of restrictions, one JSON polynomial per file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use csm_core::{IndexTuple, Polynomial, Shape};
use sha2::{Digest, Sha256};

/// Bumped whenever the restriction algorithm or its output format changes.
pub const ALGORITHM_VERSION: &str = "restriction-v1";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    pub fn key(shape: &Shape, i: &IndexTuple, j: &IndexTuple) -> String {
        let mut h = Sha256::new();
        h.update(format!("{shape}|{i}|{j}|{ALGORITHM_VERSION}"));
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// `Ok(None)` on a miss; unreadable or corrupt entries are errors.
    pub fn get(&self, shape: &Shape, i: &IndexTuple, j: &IndexTuple) -> Result<Option<Polynomial>> {
        let path = self.path(&Self::key(shape, i, j));
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
        };
        let p = Polynomial::from_json(&text)
            .with_context(|| format!("corrupt cache entry {}", path.display()))?;
        Ok(Some(p))
    }

    /// Write to a temporary file in the cache directory, then rename over the
    /// final name, so readers never see a partial entry.
    pub fn put(&self, shape: &Shape, i: &IndexTuple, j: &IndexTuple, p: &Polynomial) -> Result<()> {
        let path = self.path(&Self::key(shape, i, j));
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)
            .with_context(|| format!("creating temporary file in {}", self.dir.display()))?;
        tmp.write_all(p.to_json().as_bytes())?;
        tmp.persist(&path)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let shape: Shape = "1,1".parse().unwrap();
        let i: IndexTuple = "{2};{1}".parse().unwrap();
        let j: IndexTuple = "{1};{2}".parse().unwrap();
        assert!(cache.get(&shape, &i, &j).unwrap().is_none());
        let p: Polynomial = "1 + z1 - z2".parse().unwrap();
        cache.put(&shape, &i, &j, &p).unwrap();
        assert_eq!(cache.get(&shape, &i, &j).unwrap(), Some(p));
        assert_ne!(Cache::key(&shape, &i, &j), Cache::key(&shape, &j, &i));
    }

    #[test]
    fn corrupt_entry_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let shape: Shape = "1,1".parse().unwrap();
        let i: IndexTuple = "{2};{1}".parse().unwrap();
        fs::write(cache.path(&Cache::key(&shape, &i, &i)), "{").unwrap();
        assert!(cache.get(&shape, &i, &i).is_err());
    }
}
