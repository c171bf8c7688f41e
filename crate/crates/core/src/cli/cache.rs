//! On-disk cache of graded dimensions, one JSON file per computation.
//!
//! Files are named `<kind>-<diagram hash>-<convention>-<version>.json` and
//! hold the same JSON array printed to users, so a value computed under other
//! conventions or by another build is never picked up.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::invariants::{GradedDims, CONVENTION};

pub const CACHE_DIR_ENV: &str = "KHCAUSAL_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

fn short_hash(s: &str) -> String {
    Sha256::digest(s.as_bytes())
        .iter()
        .take(6)
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, kind: &str, diagram_hash: &str) -> PathBuf {
        self.dir.join(format!(
            "{kind}-{diagram_hash}-{}-{}.json",
            short_hash(CONVENTION),
            env!("CARGO_PKG_VERSION")
        ))
    }

    pub fn get(&self, kind: &str, diagram_hash: &str) -> Option<GradedDims> {
        let text = fs::read_to_string(self.path(kind, diagram_hash)).ok()?;
        GradedDims::from_json(&text, diagram_hash, CONVENTION).ok()
    }

    pub fn put(&self, kind: &str, dims: &GradedDims) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(format!("{}: {e}", self.dir.display())))?;
        let path = self.path(kind, dims.diagram_hash());
        fs::write(&path, dims.to_json()).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let tmp = tempfile::tempdir().unwrap();
        let cache = Cache::new(tmp.path().join("c"));
        let g = GradedDims::bigraded(&[((0, 1), 1), ((0, -1), 1)]);
        let g = GradedDims::new(g.iter(), "abc");
        assert!(cache.get("kh", "abc").is_none());
        cache.put("kh", &g).unwrap();
        assert_eq!(cache.get("kh", "abc"), Some(g));
        assert!(cache.get("akh", "abc").is_none());
    }
}
