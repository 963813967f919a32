//! On-disk cache of concrete posets, keyed by graph certificate, poset
//! kind and file-format version. A miss or an unreadable entry falls back
//! to building the poset.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::error::PosetError;
use crate::graph::Graph;
use crate::iso::canonical_form;
use crate::poset::{build_poset, PosetKind, WeightedPoset};

pub const FORMAT_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "POSETFORGE_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".posetforge";

#[derive(Clone, Debug)]
pub struct PosetCache {
    dir: PathBuf,
}

impl PosetCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PosetCache { dir: dir.into() }
    }

    /// Directory from `POSETFORGE_CACHE`, else `./.posetforge`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        PosetCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, g: &Graph, kind: PosetKind) -> PathBuf {
        let cert = canonical_form(g).cert;
        let name = format!("{}-v{}-{}.poset", kind.token().to_lowercase(), FORMAT_VERSION, hex::encode(cert.as_bytes()));
        self.dir.join(name)
    }

    pub fn load(&self, g: &Graph, kind: PosetKind) -> Option<WeightedPoset> {
        let text = fs::read_to_string(self.path_for(g, kind)).ok()?;
        WeightedPoset::from_file_text(&text).ok().filter(|p| p.kind() == kind && p.is_concrete())
    }

    fn store(&self, g: &Graph, poset: &WeightedPoset) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(g, poset.kind());
        // Write then rename so readers never see a partial file.
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, poset.to_file_text())?;
        fs::rename(&tmp, &path)
    }

    /// The cached poset when present, otherwise a fresh build that is then
    /// stored. Failures to write the cache are ignored.
    pub fn get_or_build(&self, g: &Graph, kind: PosetKind) -> Result<WeightedPoset, PosetError> {
        if let Some(p) = self.load(g, kind) {
            return Ok(p);
        }
        let p = build_poset(kind, g)?;
        let _ = self.store(g, &p);
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn hit_equals_recompute() {
        let dir = tempfile::tempdir().unwrap();
        let cache = PosetCache::new(dir.path());
        for kind in [PosetKind::Q, PosetKind::P, PosetKind::Omega] {
            let g = named::paw();
            let fresh = cache.get_or_build(&g, kind).unwrap();
            assert!(cache.path_for(&g, kind).exists());
            let hit = cache.get_or_build(&g.relabel(&[3, 2, 1, 0]), kind).unwrap();
            assert_eq!(hit.to_file_text(), fresh.to_file_text());
            assert_eq!(hit.to_file_text(), build_poset(kind, &g).unwrap().to_file_text());
        }
    }

    #[test]
    fn corrupt_entry_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = PosetCache::new(dir.path());
        let g = Graph::cycle(4);
        fs::create_dir_all(dir.path()).unwrap();
        fs::write(cache.path_for(&g, PosetKind::Q), "poset Q 1\nnonsense\n").unwrap();
        let p = cache.get_or_build(&g, PosetKind::Q).unwrap();
        assert_eq!(p, build_poset(PosetKind::Q, &g).unwrap());
    }

    #[test]
    fn keys_separate_kinds() {
        let cache = PosetCache::new("/nonexistent");
        let g = Graph::path(3);
        assert_ne!(cache.path_for(&g, PosetKind::Q), cache.path_for(&g, PosetKind::P));
    }
}
