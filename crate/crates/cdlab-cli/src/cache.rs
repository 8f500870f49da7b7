//! Content-addressed report cache: keyed by the group-file bytes, the engine
//! version, and the analysis options (the options change the report, so they
//! are part of the identity). Writes are temp-then-rename.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::report::{AnalyzeOptions, ENGINE_VERSION};

pub fn cache_key(file_bytes: &[u8], opts: AnalyzeOptions) -> String {
    let mut hasher = Sha256::new();
    hasher.update(file_bytes);
    hasher.update(ENGINE_VERSION.as_bytes());
    hasher.update([opts.oracle as u8, opts.fast as u8]);
    hasher.update((opts.max_order as u64).to_le_bytes());
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn lookup(dir: &Path, key: &str) -> Option<String> {
    fs::read_to_string(entry_path(dir, key)).ok()
}

pub fn store(dir: &Path, key: &str, report: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let path = entry_path(dir, key);
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    fs::write(&tmp, report)?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.toml"))
}
