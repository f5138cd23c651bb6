//! On-disk census cache. Entries are the JSON census report itself, keyed
//! by carrier size and a hash of the crate version.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use degroot::CensusRow;

const CACHE_SCHEMA: &str = "census-row-v1";

pub fn code_version_hash() -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION"));
    h.update(CACHE_SCHEMA);
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn entry_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("census-n{n}-{}.json", code_version_hash()))
}

/// A missing or unreadable entry is a miss.
pub fn load(dir: &Path, n: usize) -> Option<CensusRow> {
    let text = std::fs::read_to_string(entry_path(dir, n)).ok()?;
    serde_json::from_str(&text).ok().filter(|row: &CensusRow| row.n == n)
}

pub fn store(dir: &Path, row: &CensusRow) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let text = serde_json::to_string_pretty(row).expect("census rows serialize");
    std::fs::write(entry_path(dir, row.n), text)
}
