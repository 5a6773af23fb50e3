//! Planarity certificates memoized on disk under `SEMIFIELD_CACHE_DIR`,
//! keyed by the SHA-256 of the canonical map JSON and the checker mode.

use std::fs;
use std::path::PathBuf;

use semifield::planarity::{certify_with, OracleMode, PlanarityCertificate};
use semifield::serial::to_json;
use semifield::linmap::Presemifield;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "SEMIFIELD_CACHE_DIR";

fn mode_tag(mode: OracleMode) -> &'static str {
    match mode {
        OracleMode::WhenNeeded => "when-needed",
        OracleMode::WithinCap => "within-cap",
        OracleMode::Required => "required",
    }
}

pub fn key(ps: &Presemifield, mode: OracleMode) -> String {
    let mut h = Sha256::new();
    h.update(to_json(ps).as_bytes());
    h.update(b"\n");
    h.update(mode_tag(mode).as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn path_for(ps: &Presemifield, mode: OracleMode) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("{}.json", key(ps, mode))))
}

/// Cached certificate if present and readable, otherwise a fresh one, stored
/// when a cache directory is configured. Cache write failures are ignored.
pub fn certificate(ps: &Presemifield, mode: OracleMode) -> semifield::Result<PlanarityCertificate> {
    let path = path_for(ps, mode);
    if let Some(cert) = path
        .as_ref()
        .and_then(|p| fs::read_to_string(p).ok())
        .and_then(|t| serde_json::from_str::<PlanarityCertificate>(&t).ok())
    {
        return Ok(cert);
    }
    let cert = certify_with(ps, mode)?;
    if let Some(path) = path {
        if let Some(dir) = path.parent() {
            let _ = fs::create_dir_all(dir);
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if fs::write(&tmp, serde_json::to_string(&cert).expect("certificate serializes")).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
    Ok(cert)
}
