//! On-disk cache of character tables, one JSON document per prime.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use dlcusp_core::chartable::{
    irreducible_table, validate_table, CharTableDocument, CharacterTable,
};
use dlcusp_core::Sl2Group;

use crate::error::CliError;

pub const CACHE_ENV: &str = "DLCUSP_CACHE";

#[derive(Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    hits: AtomicUsize,
}

impl Cache {
    /// `--no-cache` wins, then `--cache-dir`, then `DLCUSP_CACHE`, then
    /// `~/.cache/dlcusp`.
    pub fn resolve(flag: Option<PathBuf>, no_cache: bool) -> Self {
        let dir = if no_cache {
            None
        } else {
            flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
                .or_else(|| {
                    std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("dlcusp"))
                })
        };
        Cache {
            dir,
            hits: AtomicUsize::new(0),
        }
    }

    pub fn disabled() -> Self {
        Cache::default()
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path(&self, p: u64) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("sl2_p{p}.json")))
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    /// A cached table that parses, has the current schema, matches the group
    /// and passes validation; anything else is recomputed and overwritten.
    pub fn table(&self, p: u64) -> Result<CharacterTable, CliError> {
        if let Some(t) = self.path(p).and_then(|path| load(&path, p)) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(t);
        }
        let t = irreducible_table(Arc::new(Sl2Group::new(p)?))?;
        if let Some(path) = self.path(p) {
            store(&path, &CharTableDocument::from_table(&t))?;
        }
        Ok(t)
    }
}

fn load(path: &Path, p: u64) -> Option<CharacterTable> {
    let text = std::fs::read_to_string(path).ok()?;
    let doc = CharTableDocument::from_json(&text).ok()?;
    if doc.p != p {
        return None;
    }
    let t = doc.into_table().ok()?;
    validate_table(&t).ok()?;
    Some(t)
}

/// Write-temp-then-rename so readers never see a partial file.
fn store(path: &Path, doc: &CharTableDocument) -> Result<(), CliError> {
    let dir = path.parent().expect("cache file has a parent");
    let fail =
        |e: std::io::Error| CliError::Usage(format!("cache directory {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(fail)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(doc.to_json().as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}
