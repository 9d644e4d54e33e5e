//! On-disk cache for the polynomial-level data of a space: structure
//! constants and degree-2 cup rows, as one JSON file per quotient.
//! Everything else (duality, CSM and Segre matrices, Chern classes) is
//! rederived on load through the same code paths as a fresh build, so a
//! hit skips the polynomial work and nothing more.
//!
//! Files are keyed by a fingerprint of the format version, a convention
//! token, the Cartan matrix, and the parabolic subset. A stale or
//! unreadable file is rebuilt and overwritten, never trusted.

use crate::classes::Space;
use crate::error::Result;
use crate::ratio::fnv64;
use crate::root_system::RootSystem;
use crate::weyl::WeylGroup;
use crate::FORMAT_VERSION;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Bumped whenever a pinned convention changes meaning, invalidating
/// every cache file even at the same format version.
const CONVENTION: &str = "pairing-rows;class-columns;length-lex-ids;right-descent-recursion;v1";

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheData {
    pub format_version: u32,
    pub fingerprint: String,
    pub type_label: String,
    pub cartan: Vec<Vec<i64>>,
    pub parabolic: Vec<usize>,
    pub table: Vec<(u32, u32, u32, i64)>,
    pub cup_rows: Vec<Vec<Vec<(u32, i64)>>>,
}

/// How a space was obtained. `note` carries anything worth telling the
/// user on stderr: a discarded corrupt file, a failed write.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Built { note: Option<String> },
}

pub fn fingerprint(rs: &RootSystem, subset: &[usize]) -> String {
    let mut bytes = Vec::new();
    bytes.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    bytes.extend_from_slice(CONVENTION.as_bytes());
    bytes.push(0);
    bytes.extend_from_slice(&(rs.rank() as u64).to_le_bytes());
    for row in rs.cartan() {
        for &e in row {
            bytes.extend_from_slice(&e.to_le_bytes());
        }
    }
    for &s in subset {
        bytes.extend_from_slice(&(s as u64).to_le_bytes());
    }
    format!("{:016x}", fnv64(&bytes))
}

pub fn cache_path(dir: &Path, rs: &RootSystem, subset: &[usize]) -> PathBuf {
    let fp = fingerprint(rs, subset);
    let sub = if subset.is_empty() {
        "flag".to_string()
    } else {
        let parts: Vec<String> = subset.iter().map(usize::to_string).collect();
        format!("p{}", parts.join("_"))
    };
    dir.join(format!("{}-{}-{}.json", rs.label(), sub, &fp[..8]))
}

/// Loads a candidate file. `Ok(None)` means no usable file for a clean
/// reason (absent); `Err(reason)` means a file was there and had to be
/// discarded.
fn load(path: &Path, want_fp: &str) -> std::result::Result<Option<CacheData>, String> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(format!("cache file unreadable: {e}")),
    };
    let data: CacheData =
        serde_json::from_str(&text).map_err(|e| format!("cache file does not parse: {e}"))?;
    if data.format_version != FORMAT_VERSION {
        return Err(format!(
            "cache format version {} does not match {}",
            data.format_version, FORMAT_VERSION
        ));
    }
    if data.fingerprint != want_fp {
        return Err("cache fingerprint does not match the requested space".to_string());
    }
    Ok(Some(data))
}

fn store(path: &Path, space: &Space) -> std::result::Result<(), String> {
    let rs = space.group().root_system();
    let data = CacheData {
        format_version: FORMAT_VERSION,
        fingerprint: fingerprint(rs, &space.subset()),
        type_label: rs.label().to_string(),
        cartan: rs.cartan().to_vec(),
        parabolic: space.subset(),
        table: space.table().sorted_entries(),
        cup_rows: space.simple_cup_rows().to_vec(),
    };
    let text = serde_json::to_string_pretty(&data).map_err(|e| e.to_string())?;
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| format!("cache directory: {e}"))?;
    }
    fs::write(path, text + "\n").map_err(|e| format!("cache write: {e}"))
}

/// Returns the requested space, from cache when possible. A missing,
/// stale, or corrupt file triggers a fresh build; the result is written
/// back, with any anomaly reported in the outcome's note.
pub fn resolve_space(dir: &Path, rs: RootSystem, subset: &[usize]) -> Result<(Space, CacheOutcome)> {
    let path = cache_path(dir, &rs, subset);
    let fp = fingerprint(&rs, subset);
    let mut notes = Vec::new();
    match load(&path, &fp) {
        Ok(Some(data)) => {
            let group = Arc::new(WeylGroup::new(rs.clone())?);
            match Space::from_cached(group, subset, &data.table, data.cup_rows) {
                Ok(space) => return Ok((space, CacheOutcome::Hit)),
                Err(e) => notes.push(format!("cache data failed validation: {e}")),
            }
        }
        Ok(None) => {}
        Err(reason) => notes.push(reason),
    }
    let space = Space::new(rs, subset)?;
    if let Err(reason) = store(&path, &space) {
        notes.push(reason);
    }
    let note = if notes.is_empty() { None } else { Some(notes.join("; ")) };
    Ok((space, CacheOutcome::Built { note }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn a2_grassmannian(dir: &Path) -> (Space, CacheOutcome) {
        resolve_space(dir, RootSystem::from_label("A2").unwrap(), &[2]).unwrap()
    }

    #[test]
    fn round_trip_hits_and_agrees() {
        let dir = tempfile::tempdir().unwrap();
        let (fresh, first) = a2_grassmannian(dir.path());
        assert_eq!(first, CacheOutcome::Built { note: None });
        let (cached, second) = a2_grassmannian(dir.path());
        assert_eq!(second, CacheOutcome::Hit);
        assert_eq!(fresh.num_cells(), cached.num_cells());
        for u in 0..fresh.num_cells() {
            assert_eq!(fresh.csm(u).coeffs(), cached.csm(u).coeffs());
            assert_eq!(fresh.ssm(u).coeffs(), cached.ssm(u).coeffs());
        }
        assert_eq!(fresh.chern().coeffs(), cached.chern().coeffs());
        assert_eq!(fresh.table().sorted_entries(), cached.table().sorted_entries());
    }

    #[test]
    fn cached_space_keeps_the_flag_operators() {
        let dir = tempfile::tempdir().unwrap();
        let rs = RootSystem::from_label("A2").unwrap();
        let (_, _) = resolve_space(dir.path(), rs.clone(), &[]).unwrap();
        let (cached, outcome) = resolve_space(dir.path(), rs, &[]).unwrap();
        assert_eq!(outcome, CacheOutcome::Hit);
        let from_word = cached.csm_from_word(&[1, 2]).unwrap();
        assert_eq!(&from_word, &cached.csm(cached.cell_by_word("s1s2").unwrap()));
        let open = cached.num_cells() - 1;
        assert_eq!(cached.integrate(&cached.csm(open)).unwrap(), rat(1));
    }

    #[test]
    fn stored_bytes_are_reproducible() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let rs = RootSystem::from_label("B2").unwrap();
        resolve_space(dir_a.path(), rs.clone(), &[1]).unwrap();
        resolve_space(dir_b.path(), rs.clone(), &[1]).unwrap();
        let path_a = cache_path(dir_a.path(), &rs, &[1]);
        let path_b = cache_path(dir_b.path(), &rs, &[1]);
        assert_eq!(fs::read(path_a).unwrap(), fs::read(path_b).unwrap());
    }

    #[test]
    fn garbage_file_is_rebuilt_with_a_note() {
        let dir = tempfile::tempdir().unwrap();
        let rs = RootSystem::from_label("A2").unwrap();
        let path = cache_path(dir.path(), &rs, &[2]);
        fs::create_dir_all(dir.path()).unwrap();
        fs::write(&path, "not json").unwrap();
        let (_, outcome) = a2_grassmannian(dir.path());
        match outcome {
            CacheOutcome::Built { note: Some(n) } => assert!(n.contains("does not parse")),
            other => panic!("expected a rebuild note, got {other:?}"),
        }
        // The overwrite leaves a good file behind.
        let (_, outcome) = a2_grassmannian(dir.path());
        assert_eq!(outcome, CacheOutcome::Hit);
    }

    #[test]
    fn stale_fingerprint_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let rs = RootSystem::from_label("A2").unwrap();
        a2_grassmannian(dir.path());
        let path = cache_path(dir.path(), &rs, &[2]);
        let mut data: CacheData = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        data.fingerprint = "0".repeat(16);
        fs::write(&path, serde_json::to_string_pretty(&data).unwrap()).unwrap();
        let (_, outcome) = a2_grassmannian(dir.path());
        match outcome {
            CacheOutcome::Built { note: Some(n) } => assert!(n.contains("fingerprint")),
            other => panic!("expected a rebuild note, got {other:?}"),
        }
    }

    #[test]
    fn tampered_table_fails_validation_and_rebuilds() {
        let dir = tempfile::tempdir().unwrap();
        let rs = RootSystem::from_label("A2").unwrap();
        a2_grassmannian(dir.path());
        let path = cache_path(dir.path(), &rs, &[2]);
        let mut data: CacheData = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        data.table[0].3 = 0;
        fs::write(&path, serde_json::to_string_pretty(&data).unwrap()).unwrap();
        let (space, outcome) = a2_grassmannian(dir.path());
        match outcome {
            CacheOutcome::Built { note: Some(n) } => assert!(n.contains("failed validation")),
            other => panic!("expected a rebuild note, got {other:?}"),
        }
        assert_eq!(space.num_cells(), 3);
    }

    #[test]
    fn distinct_parabolics_get_distinct_files() {
        let rs = RootSystem::from_label("A3").unwrap();
        let dir = Path::new("/tmp/x");
        let a = cache_path(dir, &rs, &[]);
        let b = cache_path(dir, &rs, &[1, 3]);
        let c = cache_path(dir, &rs, &[2, 3]);
        assert_ne!(a, b);
        assert_ne!(b, c);
        assert!(b.file_name().unwrap().to_str().unwrap().starts_with("A3-p1_3-"));
    }
}
