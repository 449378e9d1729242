//! Append-only JSON-lines result cache, keyed by the canonical parameter
//! tuple of a run. Re-reads take the last record for a key; records with a
//! different schema version are ignored; malformed lines are skipped with a
//! warning.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "PRMFORGE_CACHE";

const CACHE_FILE: &str = "runs.jsonl";

/// Canonical cache key; absent parameters stay None.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunKey {
    pub command: String,
    pub q: Option<u64>,
    pub d: Option<u32>,
    pub m: Option<usize>,
    pub r: Option<u64>,
    pub mode: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    #[serde(flatten)]
    pub key: RunKey,
    pub payload: Value,
    pub elapsed_sec: f64,
}

fn cache_path(dir: &Path) -> PathBuf {
    dir.join(CACHE_FILE)
}

/// Latest record for the key, or None. Malformed lines produce a warning on
/// standard error and are skipped; other schema versions are misses.
pub fn cache_get(dir: &Path, key: &RunKey) -> Result<Option<RunRecord>> {
    let path = cache_path(dir);
    let file = match File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::Io(e)),
    };
    let mut hit = None;
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(Error::Io)?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RunRecord = match serde_json::from_str(&line) {
            Ok(r) => r,
            Err(e) => {
                let err = Error::CacheCorrupt(format!(
                    "{}:{}: {e}",
                    path.display(),
                    lineno + 1
                ));
                eprintln!("warning: skipping cache line: {err}");
                continue;
            }
        };
        if record.schema_version == SCHEMA_VERSION && record.key == *key {
            hit = Some(record); // last record wins
        }
    }
    Ok(hit)
}

/// Append a record for the key.
pub fn cache_put(dir: &Path, key: &RunKey, payload: Value, elapsed_sec: f64) -> Result<RunRecord> {
    std::fs::create_dir_all(dir).map_err(Error::Io)?;
    let record = RunRecord {
        schema_version: SCHEMA_VERSION,
        key: key.clone(),
        payload,
        elapsed_sec,
    };
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(cache_path(dir))
        .map_err(Error::Io)?;
    let line = serde_json::to_string(&record).expect("serializable record");
    writeln!(file, "{line}").map_err(Error::Io)?;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn key(command: &str, seed: Option<u64>) -> RunKey {
        RunKey {
            command: command.to_string(),
            q: Some(4),
            d: Some(2),
            m: Some(2),
            r: Some(3),
            mode: Some("exhaustive".to_string()),
            seed,
        }
    }

    #[test]
    fn put_then_get_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let k = key("ghw", None);
        cache_put(dir.path(), &k, json!({"er": 5}), 0.1).unwrap();
        let hit = cache_get(dir.path(), &k).unwrap().unwrap();
        assert_eq!(hit.payload, json!({"er": 5}));
        assert_eq!(hit.key, k);
    }

    #[test]
    fn miss_on_absent_key_or_directory() {
        let dir = tempfile::tempdir().unwrap();
        assert!(cache_get(dir.path(), &key("ghw", None)).unwrap().is_none());
        cache_put(dir.path(), &key("ghw", None), json!(1), 0.0).unwrap();
        assert!(cache_get(dir.path(), &key("ghw", Some(7)))
            .unwrap()
            .is_none());
    }

    #[test]
    fn last_write_wins() {
        let dir = tempfile::tempdir().unwrap();
        let k = key("bounds", None);
        cache_put(dir.path(), &k, json!(1), 0.0).unwrap();
        cache_put(dir.path(), &k, json!(2), 0.0).unwrap();
        assert_eq!(cache_get(dir.path(), &k).unwrap().unwrap().payload, json!(2));
    }

    #[test]
    fn other_schema_version_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let k = key("ghw", None);
        let rec = cache_put(dir.path(), &k, json!(1), 0.0).unwrap();
        let mut v = serde_json::to_value(&rec).unwrap();
        v["schema_version"] = json!(SCHEMA_VERSION + 1);
        let mut file = OpenOptions::new()
            .append(true)
            .open(dir.path().join(CACHE_FILE))
            .unwrap();
        writeln!(file, "{}", serde_json::to_string(&v).unwrap()).unwrap();
        // the stale-schema line came later but must not shadow the v1 record
        assert_eq!(cache_get(dir.path(), &k).unwrap().unwrap().payload, json!(1));
    }

    #[test]
    fn malformed_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let k = key("ghw", None);
        cache_put(dir.path(), &k, json!(1), 0.0).unwrap();
        let mut file = OpenOptions::new()
            .append(true)
            .open(dir.path().join(CACHE_FILE))
            .unwrap();
        writeln!(file, "not json").unwrap();
        assert_eq!(cache_get(dir.path(), &k).unwrap().unwrap().payload, json!(1));
    }
}
