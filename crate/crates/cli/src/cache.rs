//! On-disk arrangement cache keyed by a hash of the drawing.
//!
//! Entries are written to a temporary file and renamed into place, so
//! concurrent readers never observe a partial record.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use knfaces_core::arrangement::{build_arrangement, Arrangement, ArrangementRecord, RECORD_VERSION};
use knfaces_core::drawings::ConvexDrawing;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const ENV_VAR: &str = "KNFACES_CACHE_DIR";

pub fn default_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(ENV_VAR) {
        return PathBuf::from(dir);
    }
    match std::env::var_os("XDG_CACHE_HOME") {
        Some(x) => PathBuf::from(x).join("knfaces"),
        None => std::env::var_os("HOME").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".")).join(".cache/knfaces"),
    }
}

/// Hex SHA-256 over the record version and the drawing's canonical JSON.
pub fn key(d: &ConvexDrawing) -> String {
    let mut h = Sha256::new();
    h.update(format!("knfaces-arrangement-v{RECORD_VERSION}\n"));
    h.update(d.to_json());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir: Some(dir) }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn entry(&self, d: &ConvexDrawing) -> Option<PathBuf> {
        self.dir.as_ref().map(|dir| dir.join(format!("{}.json", key(d))))
    }

    /// A cached arrangement if a consistent record exists; otherwise builds
    /// one and stores it. Unreadable or stale entries are rebuilt.
    pub fn arrangement(&self, d: &ConvexDrawing) -> Result<Arrangement, CliError> {
        let Some(path) = self.entry(d) else {
            return Ok(build_arrangement(d)?);
        };
        if let Some(a) = load(&path, d) {
            return Ok(a);
        }
        let a = build_arrangement(d)?;
        store(&path, &a.to_record())?;
        Ok(a)
    }
}

fn load(path: &Path, d: &ConvexDrawing) -> Option<Arrangement> {
    let text = fs::read_to_string(path).ok()?;
    let record: ArrangementRecord = serde_json::from_str(&text).ok()?;
    if &record.drawing != d {
        return None;
    }
    Arrangement::from_record(record).ok()
}

fn store(path: &Path, record: &ArrangementRecord) -> Result<(), CliError> {
    let dir = path.parent().expect("cache entries live in a directory");
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        serde_json::to_writer(&mut f, record)?;
        f.flush()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| CliError::io(path, e))
}

#[derive(Debug, serde::Serialize)]
pub struct CacheInfo {
    pub dir: PathBuf,
    pub entries: usize,
    pub bytes: u64,
}

fn entries(dir: &Path) -> Vec<PathBuf> {
    let Ok(rd) = fs::read_dir(dir) else { return Vec::new() };
    let mut out: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    out
}

pub fn info(dir: &Path) -> CacheInfo {
    let files = entries(dir);
    let bytes = files.iter().filter_map(|p| fs::metadata(p).ok()).map(|m| m.len()).sum();
    CacheInfo { dir: dir.to_path_buf(), entries: files.len(), bytes }
}

/// Removes every entry; returns how many were deleted.
pub fn clear(dir: &Path) -> Result<usize, CliError> {
    let files = entries(dir);
    for p in &files {
        fs::remove_file(p).map_err(|e| CliError::io(p, e))?;
    }
    Ok(files.len())
}
