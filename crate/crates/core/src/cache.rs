//! On-disk cache of integer boundary matrices, one JSON file per bidegree.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const FORMAT: &str = "knotalg-boundary-v1";

/// A boundary block `C(p, q) → C(p+1, q)` with integer entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedBoundary {
    pub format: String,
    pub operad: String,
    pub normalized: bool,
    pub p: usize,
    pub q: usize,
    pub source: Vec<String>,
    pub target: Vec<String>,
    /// `(row, col, value)` with rows indexing `target`.
    pub entries: Vec<(usize, usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    /// Cache rooted at `root/<key>` where the key hashes the format version,
    /// the operad name and the normalization flag.
    pub fn new(root: &Path, operad: &str, normalized: bool) -> Result<Self> {
        let mut h = Sha256::new();
        h.update(FORMAT.as_bytes());
        h.update([0]);
        h.update(operad.as_bytes());
        h.update([0, normalized as u8]);
        let key: String = h
            .finalize()
            .iter()
            .take(12)
            .map(|b| format!("{:02x}", b))
            .collect();
        let dir = root.join(key);
        fs::create_dir_all(&dir)
            .map_err(|e| Error::Cache(format!("cannot create {}: {}", dir.display(), e)))?;
        Ok(DiskCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, p: usize, q: usize) -> PathBuf {
        self.dir.join(format!("boundary_{}_{}.json", p, q))
    }

    /// The cached block, or `None` if absent, unreadable or of another format.
    pub fn load(&self, p: usize, q: usize) -> Option<CachedBoundary> {
        let text = fs::read_to_string(self.path(p, q)).ok()?;
        let b: CachedBoundary = serde_json::from_str(&text).ok()?;
        (b.format == FORMAT && b.p == p && b.q == q).then_some(b)
    }

    /// Write-then-rename so readers never see a partial file.
    pub fn store(&self, b: &CachedBoundary) -> Result<()> {
        let path = self.path(b.p, b.q);
        let tmp = self.dir.join(format!(
            ".boundary_{}_{}.{}.tmp",
            b.p,
            b.q,
            std::process::id()
        ));
        fs::write(&tmp, serde_json::to_vec(b)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_format_guard() {
        let tmp = tempfile::tempdir().unwrap();
        let c = DiskCache::new(tmp.path(), "pois5", true).unwrap();
        let mut b = CachedBoundary {
            format: FORMAT.to_string(),
            operad: "pois5".into(),
            normalized: true,
            p: 2,
            q: 4,
            source: vec!["[x1,x2]".into()],
            target: vec![],
            entries: vec![],
        };
        c.store(&b).unwrap();
        assert_eq!(c.load(2, 4), Some(b.clone()));
        assert_eq!(c.load(3, 4), None);
        b.format = "other".into();
        c.store(&b).unwrap();
        assert_eq!(c.load(2, 4), None);
        let other = DiskCache::new(tmp.path(), "pois5", false).unwrap();
        assert_ne!(other.dir(), c.dir());
    }
}
