//! Optional on-disk cache of built automata, enabled by setting
//! `GEODESIC_CACHE_DIR`. Entries are keyed by a digest of the group file
//! and the fellow traveller constant.

use std::path::PathBuf;

use geodesic_core::automaton::GeodesicAutomaton;
use sha2::{Digest, Sha256};

use crate::automaton_file::AutomatonFile;
use crate::group_file::Group;

pub const ENV: &str = "GEODESIC_CACHE_DIR";

pub fn dir() -> Option<PathBuf> {
    std::env::var_os(ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn key(group: &Group, delta: u32, minimized: bool) -> String {
    let mut h = Sha256::new();
    h.update(group.file.to_toml().as_bytes());
    h.update(format!("\ndelta={delta} minimized={minimized}\n").as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn path(group: &Group, delta: u32, minimized: bool) -> Option<PathBuf> {
    dir().map(|d| d.join(format!("automaton-{}.json", key(group, delta, minimized))))
}

/// A cached automaton, if the cache is enabled and holds a readable entry.
pub fn load(group: &Group, delta: u32, minimized: bool) -> Option<GeodesicAutomaton> {
    let text = std::fs::read_to_string(path(group, delta, minimized)?).ok()?;
    AutomatonFile::from_json(&text).ok()?.to_automaton().ok()
}

/// Stores an automaton; failures are ignored since the cache is optional.
pub fn store(group: &Group, delta: u32, minimized: bool, aut: &GeodesicAutomaton) {
    let Some(p) = path(group, delta, minimized) else { return };
    if let Some(parent) = p.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    let tmp = p.with_extension("tmp");
    if std::fs::write(&tmp, AutomatonFile::from_automaton(aut).to_json()).is_ok() {
        let _ = std::fs::rename(&tmp, &p);
    }
}
