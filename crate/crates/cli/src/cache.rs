//! Content-addressed result cache.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use khlap::LinkDiagram;
use log::{debug, warn};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::record::{diagram_hash, ResultRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// No cache directory configured.
    Disabled,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    record: ResultRecord,
    compute_ms: f64,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn path_for(dir: &Path, hash: &str) -> PathBuf {
        dir.join(format!("{hash}.json"))
    }

    fn load(&self, hash: &str) -> Option<ResultRecord> {
        let path = Self::path_for(self.dir.as_ref()?, hash);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Entry>(&text) {
            Ok(e) if e.record.hash == hash => Some(e.record),
            Ok(_) => {
                warn!("{}: hash does not match its name, ignoring", path.display());
                None
            }
            Err(e) => {
                warn!("{}: unreadable cache entry ({e}), recomputing", path.display());
                None
            }
        }
    }

    fn store(&self, record: &ResultRecord, compute_ms: f64) {
        let Some(dir) = &self.dir else { return };
        let entry = Entry {
            record: record.clone(),
            compute_ms,
        };
        if let Err(e) = write_atomic(&Self::path_for(dir, &record.hash), &to_json(&entry)) {
            warn!("cache write failed: {e}");
        }
    }

    /// Returns the cached record for `d` or computes and stores it.
    pub fn get_or_compute(&self, d: &LinkDiagram) -> Result<(ResultRecord, CacheStatus), CliError> {
        let hash = diagram_hash(d);
        if let Some(record) = self.load(&hash) {
            debug!("cache hit {hash}");
            return Ok((record, CacheStatus::Hit));
        }
        let start = Instant::now();
        let record = ResultRecord::compute(d)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        debug!("computed {hash} in {ms:.1} ms");
        if self.dir.is_some() {
            self.store(&record, ms);
            Ok((record, CacheStatus::Miss))
        } else {
            Ok((record, CacheStatus::Disabled))
        }
    }
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Writes through a temporary file in the same directory, then renames, so
/// readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io_err)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    let mut f = fs::File::create(&tmp).map_err(io_err)?;
    f.write_all(contents.as_bytes()).map_err(io_err)?;
    f.sync_all().map_err(io_err)?;
    drop(f);
    fs::rename(&tmp, path).map_err(io_err)
}
