//! On-disk memo of classified zero sets, one JSON file per solve.

use std::fs;
use std::path::{Path, PathBuf};

use crate::tables::ZeroTable;

pub const CACHE_ENV: &str = "GONCHAR_CACHE";
pub const DEFAULT_DIR: &str = ".gonchar-cache";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn from_env() -> Self {
        Cache::new(
            std::env::var_os(CACHE_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR)),
        )
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File stem for a solve of `G(d;z)` at a starting precision and tolerance.
    pub fn key(d: u32, q: &str, prec: u32, tol: &str) -> String {
        let clean = |s: &str| -> String {
            s.chars()
                .map(|c| {
                    if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                        c
                    } else {
                        '_'
                    }
                })
                .collect()
        };
        format!("zeros-d{d}-q{}-p{prec}-t{}", clean(q), clean(tol))
    }

    /// A missing or unreadable entry is a miss.
    pub fn load(&self, key: &str) -> Option<ZeroTable> {
        let text = fs::read_to_string(self.dir.join(format!("{key}.json"))).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Write to a temporary name and rename, so readers never see half a file.
    pub fn store(&self, key: &str, table: &ZeroTable) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self
            .dir
            .join(format!("{key}.json.tmp{}", std::process::id()));
        let text = serde_json::to_string(table).map_err(std::io::Error::other)?;
        fs::write(&tmp, text)?;
        fs::rename(&tmp, self.dir.join(format!("{key}.json")))
    }
}
