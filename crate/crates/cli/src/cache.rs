//! Content-addressed store for computed characters.
//!
//! Entries live at `<dir>/<sha256>.json` and are written through a temporary
//! file in the same directory followed by an atomic rename, so concurrent
//! writers never expose a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Cache {
    dir: PathBuf,
}

/// Hash of the canonical (sorted-key) serialization of `request`.
pub fn key(request: &Value) -> String {
    hex::encode(Sha256::digest(request.to_string().as_bytes()))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored payload, if present and readable. Corrupt entries are
    /// treated as misses.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Value = serde_json::from_str(&text).ok()?;
        if entry.get("key")?.as_str()? != key {
            return None;
        }
        entry.get("payload").cloned()
    }

    pub fn put(&self, key: &str, payload: &Value) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(format!("cache {}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let created = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = json!({
            "key": key,
            "version": TOOL_VERSION,
            "created": created,
            "payload": payload,
        });
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(entry.to_string().as_bytes()).map_err(io)?;
        tmp.persist(self.path(key)).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("c"));
        let k = key(&json!({"op": "e", "weight": [-1]}));
        assert!(cache.get(&k).is_none());
        let payload = json!({"character": {"N": null, "terms": []}});
        cache.put(&k, &payload).unwrap();
        assert_eq!(cache.get(&k), Some(payload));
        fs::write(cache.path(&k), "{not json").unwrap();
        assert!(cache.get(&k).is_none());
    }

    #[test]
    fn keys_are_canonical() {
        let a: Value = serde_json::from_str(r#"{"a":1,"b":[2,3]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"b":[2,3],"a":1}"#).unwrap();
        assert_eq!(key(&a), key(&b));
        assert_ne!(key(&a), key(&json!({"a": 2, "b": [2, 3]})));
    }
}
