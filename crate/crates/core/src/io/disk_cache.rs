//! Relation spaces persisted as versioned text files, one per
//! `(presentation hash, arity)`.
//!
//! Entries are written to a temporary file and renamed into place, so
//! concurrent processes never observe partial files. An entry that fails to
//! parse or is not in canonical form is discarded and recomputed.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::linalg::{Rational, SparseVector, Subspace};
use crate::presentation::ComponentStore;

const HEADER: &str = "derived-identities component cache v1";

pub struct DiskCache {
    dir: PathBuf,
    disabled: AtomicBool,
    warnings: Mutex<Vec<String>>,
    counter: AtomicUsize,
}

impl DiskCache {
    /// Uses `dir`, creating it if needed. If that fails the cache is
    /// disabled and a warning is queued.
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        let dir = dir.into();
        let cache = DiskCache {
            disabled: AtomicBool::new(false),
            warnings: Mutex::new(Vec::new()),
            counter: AtomicUsize::new(0),
            dir,
        };
        if let Err(e) = fs::create_dir_all(&cache.dir) {
            cache.disable(format!("cannot create cache directory {}: {e}", cache.dir.display()));
        }
        cache
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.rel"))
    }

    /// Drains queued warnings.
    pub fn take_warnings(&self) -> Vec<String> {
        std::mem::take(&mut *self.warnings.lock().expect("warnings lock"))
    }

    fn warn(&self, msg: String) {
        self.warnings.lock().expect("warnings lock").push(msg);
    }

    fn disable(&self, msg: String) {
        self.disabled.store(true, Ordering::Relaxed);
        self.warn(format!("{msg}; continuing without the disk cache"));
    }
}

pub fn encode(key: &str, s: &Subspace) -> String {
    let mut out = format!("{HEADER}\nkey {key}\nambient {}\nrows {}\n", s.ambient(), s.dim());
    for row in s.rows() {
        let entries: Vec<String> = row.iter().map(|(i, v)| format!("{i}:{v}")).collect();
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

pub fn decode(text: &str, key: &str, ambient: usize) -> Result<Subspace, String> {
    let mut lines = text.lines();
    let mut field = |name: &str| -> Result<String, String> {
        let line = lines.next().ok_or("truncated")?;
        line.strip_prefix(name)
            .and_then(|r| r.strip_prefix(' '))
            .map(str::to_string)
            .ok_or(format!("expected `{name}`"))
    };
    if field("derived-identities")? != "component cache v1" {
        return Err("unknown header".into());
    }
    if field("key")? != key {
        return Err("key mismatch".into());
    }
    let stored: usize = field("ambient")?.parse().map_err(|_| "bad ambient")?;
    if stored != ambient {
        return Err(format!("ambient {stored}, expected {ambient}"));
    }
    let count: usize = field("rows")?.parse().map_err(|_| "bad row count")?;
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines.next().ok_or("truncated")?;
        let mut entries = Vec::new();
        for e in line.split_whitespace() {
            let (i, v) = e.split_once(':').ok_or("bad entry")?;
            let i: usize = i.parse().map_err(|_| "bad index")?;
            if i >= ambient {
                return Err("index out of range".into());
            }
            let v: Rational = v.parse().map_err(|_| "bad coefficient")?;
            entries.push((i, v));
        }
        rows.push(SparseVector::from_entries(ambient, entries));
    }
    if lines.next() != Some("end") || lines.next().is_some() {
        return Err("missing end marker".into());
    }
    let s = Subspace::span(ambient, &rows).map_err(|e| e.to_string())?;
    if s.rows() != rows.as_slice() {
        return Err("rows are not in canonical form".into());
    }
    Ok(s)
}

impl ComponentStore for DiskCache {
    fn load(&self, key: &str, ambient: usize) -> Option<Subspace> {
        if self.disabled.load(Ordering::Relaxed) {
            return None;
        }
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                self.warn(format!("cannot read {}: {e}", path.display()));
                return None;
            }
        };
        match decode(&text, key, ambient) {
            Ok(s) => Some(s),
            Err(reason) => {
                self.warn(format!("discarding corrupt cache entry {} ({reason})", path.display()));
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    fn store(&self, key: &str, relations: &Subspace) {
        if self.disabled.load(Ordering::Relaxed) {
            return;
        }
        let path = self.path_for(key);
        if path.exists() {
            return;
        }
        let tmp = self.dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            self.counter.fetch_add(1, Ordering::Relaxed)
        ));
        let result = fs::write(&tmp, encode(key, relations)).and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            self.disable(format!("cannot write {}: {e}", path.display()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{builtin, cache_key, ComponentCache};

    #[test]
    fn round_trip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let nov = builtin("nov").unwrap();
        let first = ComponentCache::new().with_store(Box::new(DiskCache::new(dir.path())));
        let a = first.component(&nov, 3).unwrap();
        let second = ComponentCache::new().with_store(Box::new(DiskCache::new(dir.path())));
        let b = second.component(&nov, 3).unwrap();
        assert_eq!(second.stats(), (0, 1, 0));
        assert_eq!(a.relations(), b.relations());
    }

    #[test]
    fn corrupt_entries_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let as_ = builtin("as").unwrap();
        let store = DiskCache::new(dir.path());
        let path = store.path_for(&cache_key(&as_, 3));
        ComponentCache::new().with_store(Box::new(DiskCache::new(dir.path()))).component(&as_, 3).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, &text[..text.len() / 2]).unwrap();
        let cache = ComponentCache::new().with_store(Box::new(store));
        assert_eq!(cache.component(&as_, 3).unwrap().dim(), 6);
        assert_eq!(cache.stats(), (0, 0, 1));
        assert_eq!(fs::read_to_string(&path).unwrap(), text);
    }

    #[test]
    fn decode_rejects_noncanonical_rows() {
        let s = Subspace::span(2, &[SparseVector::from_dense(&[Rational::from_integer(1.into()), Rational::from_integer(1.into())])]).unwrap();
        let good = encode("k", &s);
        assert_eq!(decode(&good, "k", 2).unwrap(), s);
        assert!(decode(&good.replace("0:1 1:1", "0:2 1:2"), "k", 2).is_err());
        assert!(decode(&good, "other", 2).is_err());
        assert!(decode(&good, "k", 3).is_err());
    }

    #[test]
    fn unwritable_directory_degrades() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain-file");
        fs::write(&file, "x").unwrap();
        let store = DiskCache::new(file.join("sub"));
        assert!(!store.take_warnings().is_empty());
        assert!(store.load("k", 1).is_none());
    }
}
