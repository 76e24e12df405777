//! On-disk result cache for closed free energies.
//!
//! Keyed by model, genus, and the engine revision, so formula changes
//! invalidate stale entries. The cached payload is the canonical JSON form
//! of the polynomial and must deserialize to exactly what a fresh run
//! produces; the creation timestamp lives only in the cache wrapper, never
//! in result artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::algebra::json::{poly_from_value, poly_to_json};
use crate::algebra::Poly;

/// Bumped whenever a computation formula changes.
pub const ENGINE_REVISION: &str = "1";

/// Cache directory from the environment, if configured.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("TOPGRAV_CACHE_DIR").map(PathBuf::from)
}

pub fn cache_key(model: &str, genus: u32) -> String {
    let digest = Sha256::digest(format!("{model}:{genus}:{ENGINE_REVISION}").as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("{model}-{genus}-{}", &hex[..16])
}

#[derive(Deserialize)]
struct CacheEntry {
    engine_revision: String,
    poly: serde_json::Value,
}

pub fn load(dir: &Path, model: &str, genus: u32) -> Option<Poly> {
    let path = dir.join(format!("{}.json", cache_key(model, genus)));
    let text = fs::read_to_string(path).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    if entry.engine_revision != ENGINE_REVISION {
        return None;
    }
    poly_from_value(&entry.poly).ok()
}

pub fn store(dir: &Path, model: &str, genus: u32, poly: &Poly) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let created = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let text = format!(
        "{{\"key\":\"{}\",\"engine_revision\":\"{ENGINE_REVISION}\",\"created_at\":{created},\"poly\":{}}}",
        cache_key(model, genus),
        poly_to_json(poly)
    );
    fs::write(dir.join(format!("{}.json", cache_key(model, genus))), text)
}
