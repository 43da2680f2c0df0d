//! Content-addressed result cache: entries are keyed by a cryptographic
//! hash of the canonicalized job, written with write-temporary-then-rename
//! semantics, and self-verifying on read. Cache problems never fail a
//! command: a bad entry is quarantined and the result recomputed.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::PathBuf;

/// The payload stored per key: the rendered report and the exit code the
/// command produced when it was computed.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CachedResult {
    pub report: String,
    pub exit: i32,
}

/// On-disk entry wrapper; `sha256` covers the serialized body so tampering
/// is detected independently of the file name.
#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    sha256: String,
    body: String,
}

pub struct Cache {
    dir: PathBuf,
}

pub fn sha256_hex(data: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(data);
    hex::encode(h.finalize())
}

/// Content key of a canonicalized job description.
pub fn job_key(job: &serde_json::Value) -> String {
    let canonical = serde_json::to_string(job).expect("job serializes");
    sha256_hex(canonical.as_bytes())
}

impl Cache {
    /// `None` when the directory cannot be created (the caller then just
    /// runs uncached).
    pub fn open(dir: PathBuf) -> Option<Cache> {
        fs::create_dir_all(&dir).ok()?;
        Some(Cache { dir })
    }

    fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Returns the payload only if the entry re-verifies (name matches the
    /// stored key and the body hash matches); otherwise the entry is
    /// quarantined and `None` triggers recomputation.
    pub fn get(&self, key: &str) -> Option<CachedResult> {
        let path = self.entry_path(key);
        let raw = fs::read_to_string(&path).ok()?;
        let verified = serde_json::from_str::<Entry>(&raw)
            .ok()
            .filter(|e| e.key == key && sha256_hex(e.body.as_bytes()) == e.sha256)
            .and_then(|e| serde_json::from_str::<CachedResult>(&e.body).ok());
        if verified.is_none() {
            self.quarantine(key);
        }
        verified
    }

    /// Atomic publish: write to a temporary file in the cache directory,
    /// then rename over the final name. Concurrent writers of the same key
    /// each rename a fully written file, so one valid entry survives.
    pub fn put(&self, key: &str, result: &CachedResult) {
        let body = match serde_json::to_string(result) {
            Ok(b) => b,
            Err(_) => return,
        };
        let entry = Entry {
            key: key.to_string(),
            sha256: sha256_hex(body.as_bytes()),
            body,
        };
        let serialized = match serde_json::to_string(&entry) {
            Ok(s) => s,
            Err(_) => return,
        };
        let tmp = match tempfile::NamedTempFile::new_in(&self.dir) {
            Ok(t) => t,
            Err(_) => return,
        };
        if fs::write(tmp.path(), serialized).is_err() {
            return;
        }
        let _ = tmp.persist(self.entry_path(key));
    }

    /// Rename a corrupt entry aside so it stops shadowing recomputation.
    fn quarantine(&self, key: &str) {
        let path = self.entry_path(key);
        for n in 0.. {
            let aside = self.dir.join(format!("{key}.quarantined-{n}"));
            if !aside.exists() {
                let _ = fs::rename(&path, &aside);
                return;
            }
        }
    }
}
