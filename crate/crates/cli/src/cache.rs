//! Content-addressed store of computed dimension tables.
//!
//! A record lives at `<dir>/<key>.json`, where the key is the SHA-256 of the
//! theory, the field and the canonical text of the diagram. Records are
//! written as JSON with sorted keys so that stored files diff cleanly and a
//! printed record parses back to the same bytes.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use linkhom::algebra::BigradedDims;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Directory used when neither the flag nor `HOM_CACHE_DIR` is set.
pub const DEFAULT_DIR: &str = ".homcache";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    /// Canonical text of the input diagram.
    pub diagram: String,
    pub theory: String,
    pub field: String,
    /// `[first, second, dim]` in half units.
    pub dims: Vec<[i64; 3]>,
    /// Named operator matrices as `(row, col)` lists of nonzero F2 entries.
    pub operators: Option<BTreeMap<String, Vec<[usize; 2]>>>,
    pub tool_version: String,
    /// Seconds since the Unix epoch at creation.
    pub timestamp: u64,
}

pub fn cache_key(diagram: &str, theory: &str, field: &str) -> String {
    let mut h = Sha256::new();
    for part in [theory, field, diagram] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl CacheRecord {
    pub fn new(diagram: &str, theory: &str, field: &str, dims: &BigradedDims) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        CacheRecord {
            key: cache_key(diagram, theory, field),
            diagram: diagram.to_string(),
            theory: theory.to_string(),
            field: field.to_string(),
            dims: dims.to_triples(),
            operators: None,
            tool_version: TOOL_VERSION.to_string(),
            timestamp,
        }
    }

    pub fn dims(&self) -> BigradedDims {
        BigradedDims::from_triples(&self.dims)
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("record serializes");
        let mut s = serde_json::to_string_pretty(&sorted(v)).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        serde_json::from_str(s).map_err(|e| e.to_string())
    }

    pub fn version_matches(&self) -> bool {
        self.tool_version == TOOL_VERSION
    }

    /// The stored key is the hash of the stored contents.
    pub fn key_is_consistent(&self) -> bool {
        self.key == cache_key(&self.diagram, &self.theory, &self.field)
    }
}

/// Rebuilds every object through a `BTreeMap` so keys come out sorted even
/// if `serde_json` keeps insertion order.
fn sorted(v: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Object(m) => {
            let b: BTreeMap<String, Value> = m.into_iter().map(|(k, v)| (k, sorted(v))).collect();
            Value::Object(b.into_iter().collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

pub struct CacheStore {
    dir: PathBuf,
}

impl CacheStore {
    /// The flag wins, then the environment variable, then [`DEFAULT_DIR`].
    pub fn resolve(flag: Option<&Path>, env: Option<&str>) -> PathBuf {
        match (flag, env) {
            (Some(p), _) => p.to_path_buf(),
            (None, Some(e)) if !e.is_empty() => PathBuf::from(e),
            _ => PathBuf::from(DEFAULT_DIR),
        }
    }

    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CacheStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> io::Result<Option<CacheRecord>> {
        match fs::read_to_string(self.path(key)) {
            Ok(s) => CacheRecord::from_json(&s).map(Some).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn put(&self, rec: &CacheRecord) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&rec.key);
        let tmp = self.dir.join(format!(".{}.tmp", rec.key));
        fs::write(&tmp, rec.to_json())?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    fn files(&self) -> io::Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e),
        };
        for entry in rd {
            let p = entry?.path();
            if p.extension().is_some_and(|x| x == "json") {
                out.push(p);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Readable records in key order, plus the files that failed to parse.
    pub fn list(&self) -> io::Result<(Vec<CacheRecord>, Vec<PathBuf>)> {
        let mut recs = Vec::new();
        let mut bad = Vec::new();
        for p in self.files()? {
            match fs::read_to_string(&p).map_err(|e| e.to_string()).and_then(|s| CacheRecord::from_json(&s)) {
                Ok(r) => recs.push(r),
                Err(_) => bad.push(p),
            }
        }
        Ok((recs, bad))
    }

    /// The record whose key starts with `prefix`, if exactly one does.
    pub fn find(&self, prefix: &str) -> Result<CacheRecord, String> {
        let (recs, _) = self.list().map_err(|e| e.to_string())?;
        let hits: Vec<CacheRecord> = recs.into_iter().filter(|r| r.key.starts_with(prefix)).collect();
        match hits.len() {
            0 => Err(format!("no cache record matches '{prefix}'")),
            1 => Ok(hits.into_iter().next().expect("one hit")),
            k => Err(format!("{k} cache records match '{prefix}'; give more of the key")),
        }
    }

    /// Removes every record and returns how many were removed.
    pub fn clear(&self) -> io::Result<usize> {
        let files = self.files()?;
        for p in &files {
            fs::remove_file(p)?;
        }
        Ok(files.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use linkhom::algebra::BigradedDims;

    fn sample() -> CacheRecord {
        let d = BigradedDims::from_int_pairs(&[((0, 1), 1), ((0, -1), 1)]);
        CacheRecord::new("X[1,2,3,4]", "kh", "F2", &d)
    }

    #[test]
    fn keys_are_stable_and_distinguish_inputs() {
        let a = cache_key("d", "kh", "F2");
        assert_eq!(a, cache_key("d", "kh", "F2"));
        assert_eq!(a.len(), 64);
        assert_ne!(a, cache_key("d", "kh", "Q"));
        assert_ne!(cache_key("ab", "c", "F2"), cache_key("a", "bc", "F2"));
    }

    #[test]
    fn json_has_sorted_keys_and_round_trips() {
        let r = sample();
        let s = r.to_json();
        let back = CacheRecord::from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), s);
        let order: Vec<usize> = [
            "\"diagram\"",
            "\"dims\"",
            "\"field\"",
            "\"key\"",
            "\"operators\"",
            "\"theory\"",
            "\"timestamp\"",
            "\"tool_version\"",
        ]
        .iter()
        .map(|k| s.find(k).unwrap())
        .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]), "{s}");
        assert!(r.key_is_consistent());
    }

    #[test]
    fn store_round_trip_and_clear() {
        let dir = tempfile::tempdir().unwrap();
        let store = CacheStore::new(dir.path().join("c"));
        assert!(store.list().unwrap().0.is_empty());
        let r = sample();
        store.put(&r).unwrap();
        assert_eq!(store.get(&r.key).unwrap(), Some(r.clone()));
        assert_eq!(store.find(&r.key[..8]).unwrap(), r);
        assert!(store.find("zz").is_err());
        assert_eq!(store.clear().unwrap(), 1);
        assert_eq!(store.get(&r.key).unwrap(), None);
    }

    #[test]
    fn directory_resolution_order() {
        let flag = Path::new("/a");
        assert_eq!(CacheStore::resolve(Some(flag), Some("/b")), PathBuf::from("/a"));
        assert_eq!(CacheStore::resolve(None, Some("/b")), PathBuf::from("/b"));
        assert_eq!(CacheStore::resolve(None, None), PathBuf::from(DEFAULT_DIR));
    }
}
