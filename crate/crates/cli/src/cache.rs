//! Content-addressed store for expensive results.
//!
//! An entry is `<key>.entry` holding a header line
//! `superspace-cache 1 <sha256 of payload>` followed by the payload bytes.
//! Writes go to a temporary file in the same directory and are renamed into
//! place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

const MAGIC: &str = "superspace-cache 1";

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of a sequence of labelled parts; lengths are included so that
/// different splittings never collide.
pub fn cache_key(parts: &[(&str, &str)]) -> String {
    let mut h = Sha256::new();
    for (label, value) in parts {
        for s in [label, value] {
            h.update((s.len() as u64).to_le_bytes());
            h.update(s.as_bytes());
        }
    }
    hex::encode(h.finalize())
}

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    verify: bool,
    warnings: Vec<String>,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, verify: bool) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir, verify, warnings: Vec::new() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn warn(&mut self, msg: String) {
        eprintln!("warning: {msg}");
        self.warnings.push(msg);
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.entry"))
    }

    /// The payload stored under `key`. Unreadable or corrupt entries produce
    /// a warning and count as misses.
    pub fn lookup(&mut self, key: &str) -> Option<Vec<u8>> {
        let path = self.path(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                self.warn(format!("cannot read cache entry {}: {e}", path.display()));
                return None;
            }
        };
        let Some(nl) = bytes.iter().position(|&b| b == b'\n') else {
            self.warn(format!("corrupt cache entry {} (no header); recomputing", path.display()));
            return None;
        };
        let header = String::from_utf8_lossy(&bytes[..nl]);
        let payload = &bytes[nl + 1..];
        let expected = format!("{MAGIC} {}", sha256_hex(payload));
        if header != expected {
            self.warn(format!("corrupt cache entry {} (checksum mismatch); recomputing", path.display()));
            return None;
        }
        Some(payload.to_vec())
    }

    pub fn store(&mut self, key: &str, payload: &[u8]) -> std::io::Result<()> {
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".{key}.{}.{n}.tmp", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        writeln!(f, "{MAGIC} {}", sha256_hex(payload))?;
        f.write_all(payload)?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, self.path(key))
    }

    /// Looks `key` up, computing and storing on a miss. In verify mode every
    /// hit is recomputed and compared byte for byte with the stored payload.
    pub fn get_or_compute<T, E>(&mut self, key: &str, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        let hit = self.lookup(key).and_then(|bytes| match serde_json::from_slice::<T>(&bytes) {
            Ok(v) => Some((bytes, v)),
            Err(e) => {
                self.warn(format!("undecodable cache entry {key} ({e}); recomputing"));
                None
            }
        });
        if let Some((bytes, value)) = hit {
            if !self.verify {
                return Ok(value);
            }
            let fresh = compute()?;
            let fresh_bytes = serde_json::to_vec(&fresh).expect("cache payloads serialize");
            if fresh_bytes != bytes {
                self.warn(format!("cache entry {key} differs from recomputation; replacing it"));
                self.write(key, &fresh_bytes);
            }
            return Ok(fresh);
        }
        let value = compute()?;
        let bytes = serde_json::to_vec(&value).expect("cache payloads serialize");
        self.write(key, &bytes);
        Ok(value)
    }

    fn write(&mut self, key: &str, bytes: &[u8]) {
        if let Err(e) = self.store(key, bytes) {
            self.warn(format!("cannot write cache entry {key}: {e}"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_lookup_is_identical() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = Cache::new(dir.path(), false).unwrap();
        let key = cache_key(&[("a", "b")]);
        c.store(&key, b"payload \x00 bytes").unwrap();
        assert_eq!(c.lookup(&key).unwrap(), b"payload \x00 bytes");
        assert!(c.warnings().is_empty());
    }

    #[test]
    fn keys_separate_parts() {
        assert_ne!(cache_key(&[("order", "grevlex")]), cache_key(&[("order", "lex")]));
        assert_ne!(cache_key(&[("ab", "c")]), cache_key(&[("a", "bc")]));
    }

    #[test]
    fn tampered_entry_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = Cache::new(dir.path(), false).unwrap();
        let key = cache_key(&[("x", "1")]);
        let v: Result<Vec<u32>, ()> = c.get_or_compute(&key, || Ok(vec![1, 2, 3]));
        assert_eq!(v.unwrap(), vec![1, 2, 3]);
        let path = dir.path().join(format!("{key}.entry"));
        let text = fs::read_to_string(&path).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&path, text).unwrap();
        let v: Result<Vec<u32>, ()> = c.get_or_compute(&key, || Ok(vec![1, 2, 3]));
        assert_eq!(v.unwrap(), vec![1, 2, 3]);
        assert_eq!(c.warnings().len(), 1);
        assert!(c.lookup(&key).is_some());
    }

    #[test]
    fn verify_mode_replaces_stale_entries() {
        let dir = tempfile::tempdir().unwrap();
        let key = cache_key(&[("x", "2")]);
        let mut c = Cache::new(dir.path(), false).unwrap();
        let _: Result<u32, ()> = c.get_or_compute(&key, || Ok(7));
        // a well-formed entry with the wrong value
        c.store(&key, b"8").unwrap();
        let mut v = Cache::new(dir.path(), true).unwrap();
        let got: Result<u32, ()> = v.get_or_compute(&key, || Ok(7));
        assert_eq!(got.unwrap(), 7);
        assert_eq!(v.warnings().len(), 1);
        assert_eq!(v.lookup(&key).unwrap(), b"7");
    }
}
