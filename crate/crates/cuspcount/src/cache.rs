//! Optional persistent memo cache.
//!
//! Plain text, trivially inspectable and merge-safe:
//!
//! ```text
//! cuspcount-cache v1
//! DIM <k> <N> <value>
//! NEWDIM <k> <N> <value>
//! CLASSNUM <D> <value>
//! ```
//!
//! The file is append-only; corrupt lines are skipped with a warning. It is
//! a pure memo: every stored value equals a fresh recomputation, so deleting
//! the file never changes any output. Writers take an advisory exclusive
//! lock; loads take a shared lock.

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::Path;

use fs2::FileExt;

use crate::{dims, quadratic};

/// Environment variable that enables and locates the cache file.
pub const CACHE_ENV: &str = "CUSPCOUNT_CACHE";

/// First line of every cache file.
pub const CACHE_HEADER: &str = "cuspcount-cache v1";

/// Result of loading a cache file.
#[derive(Debug, Default)]
pub struct LoadOutcome {
    /// Records seeded into the in-process memos.
    pub loaded: usize,
    /// One message per skipped line or file-level problem.
    pub warnings: Vec<String>,
}

/// Cache path from the environment, if configured.
pub fn env_cache_path() -> Option<std::path::PathBuf> {
    std::env::var_os(CACHE_ENV).map(std::path::PathBuf::from)
}

/// Load `path` (if it exists) and seed the in-process memos.
pub fn load_into_memos(path: &Path) -> std::io::Result<LoadOutcome> {
    let mut outcome = LoadOutcome::default();
    let mut file = match OpenOptions::new().read(true).open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(outcome),
        Err(e) => return Err(e),
    };
    file.lock_shared()?;
    let mut text = String::new();
    file.read_to_string(&mut text)?;
    fs2::FileExt::unlock(&file)?;

    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == CACHE_HEADER => {}
        Some((_, header)) => {
            outcome
                .warnings
                .push(format!("ignoring cache {}: unrecognized header {header:?}", path.display()));
            return Ok(outcome);
        }
        None => return Ok(outcome),
    }
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match parse_record(line) {
            Some(Record::Dim(k, n, v)) => {
                dims::seed_dim_cusp(k, n, v);
                outcome.loaded += 1;
            }
            Some(Record::NewDim(k, n, v)) => {
                dims::seed_dim_new(k, n, v);
                outcome.loaded += 1;
            }
            Some(Record::ClassNum(d, h)) => {
                quadratic::seed_class_number(d, h);
                outcome.loaded += 1;
            }
            None => outcome
                .warnings
                .push(format!("skipping corrupt cache line {}: {line:?}", idx + 1)),
        }
    }
    Ok(outcome)
}

enum Record {
    Dim(u32, u64, u128),
    NewDim(u32, u64, u128),
    ClassNum(i64, u64),
}

fn parse_record(line: &str) -> Option<Record> {
    let mut parts = line.split_whitespace();
    let kind = parts.next()?;
    let rec = match kind {
        "DIM" | "NEWDIM" => {
            let k: u32 = parts.next()?.parse().ok()?;
            let n: u64 = parts.next()?.parse().ok()?;
            let v: u128 = parts.next()?.parse().ok()?;
            if kind == "DIM" {
                Record::Dim(k, n, v)
            } else {
                Record::NewDim(k, n, v)
            }
        }
        "CLASSNUM" => {
            let d: i64 = parts.next()?.parse().ok()?;
            let h: u64 = parts.next()?.parse().ok()?;
            if d >= 0 {
                return None;
            }
            Record::ClassNum(d, h)
        }
        _ => return None,
    };
    if parts.next().is_some() {
        return None;
    }
    Some(rec)
}

/// Append every memoized value not already present in the file. Creates the
/// file (with header) if needed. Returns the number of appended records.
pub fn append_new_records(path: &Path) -> std::io::Result<usize> {
    let mut file = OpenOptions::new()
        .read(true)
        .create(true)
        .append(true)
        .open(path)?;
    file.lock_exclusive()?;
    let result = append_locked(&mut file);
    fs2::FileExt::unlock(&file)?;
    result
}

fn append_locked(file: &mut std::fs::File) -> std::io::Result<usize> {
    file.seek(SeekFrom::Start(0))?;
    let mut text = String::new();
    file.read_to_string(&mut text)?;
    let mut existing: HashSet<String> = HashSet::new();
    let mut has_header = false;
    for (i, line) in text.lines().enumerate() {
        if i == 0 && line.trim() == CACHE_HEADER {
            has_header = true;
            continue;
        }
        // key = record without the value field
        if let Some(key) = record_key(line.trim()) {
            existing.insert(key);
        }
    }
    let mut out = String::new();
    if !has_header {
        if !text.trim().is_empty() {
            // foreign file: leave it alone
            return Ok(0);
        }
        out.push_str(CACHE_HEADER);
        out.push('\n');
    }
    let mut appended = 0usize;
    for (k, n, v) in dims::snapshot_dim_cusp() {
        let key = format!("DIM {k} {n}");
        if existing.insert(key.clone()) {
            out.push_str(&format!("{key} {v}\n"));
            appended += 1;
        }
    }
    for (k, n, v) in dims::snapshot_dim_new() {
        let key = format!("NEWDIM {k} {n}");
        if existing.insert(key.clone()) {
            out.push_str(&format!("{key} {v}\n"));
            appended += 1;
        }
    }
    for (d, h) in quadratic::snapshot_class_numbers() {
        let key = format!("CLASSNUM {d}");
        if existing.insert(key.clone()) {
            out.push_str(&format!("{key} {h}\n"));
            appended += 1;
        }
    }
    if !out.is_empty() {
        file.seek(SeekFrom::End(0))?;
        file.write_all(out.as_bytes())?;
    }
    Ok(appended)
}

fn record_key(line: &str) -> Option<String> {
    let mut parts = line.split_whitespace();
    let kind = parts.next()?;
    match kind {
        "DIM" | "NEWDIM" => {
            let k = parts.next()?;
            let n = parts.next()?;
            Some(format!("{kind} {k} {n}"))
        }
        "CLASSNUM" => {
            let d = parts.next()?;
            Some(format!("{kind} {d}"))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_records() {
        assert!(matches!(parse_record("DIM 2 25 12"), Some(Record::Dim(2, 25, 12))));
        assert!(matches!(
            parse_record("NEWDIM 2 25 12"),
            Some(Record::NewDim(2, 25, 12))
        ));
        assert!(matches!(
            parse_record("CLASSNUM -23 3"),
            Some(Record::ClassNum(-23, 3))
        ));
        assert!(parse_record("CLASSNUM 23 3").is_none());
        assert!(parse_record("DIM 2 25").is_none());
        assert!(parse_record("DIM 2 25 12 9").is_none());
        assert!(parse_record("NOPE 1 2 3").is_none());
    }

    #[test]
    fn load_and_append_round_trip() {
        let dir = std::env::temp_dir().join(format!("cuspcount-cache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.cache");
        let _ = std::fs::remove_file(&path);

        // populate some memos, then write
        crate::dims::dim_cusp(2, 25).unwrap();
        crate::quadratic::class_number(-23).unwrap();
        let appended = append_new_records(&path).unwrap();
        assert!(appended > 0);

        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(CACHE_HEADER));
        assert!(text.contains("DIM 2 25 12"));
        assert!(text.contains("CLASSNUM -23 3"));

        // idempotent: nothing new on a second pass
        assert_eq!(append_new_records(&path).unwrap(), 0);

        let outcome = load_into_memos(&path).unwrap();
        assert!(outcome.loaded > 0);
        assert!(outcome.warnings.is_empty());

        // corrupt lines are skipped with a warning
        std::fs::write(&path, format!("{CACHE_HEADER}\nDIM 2 25 12\nGARBAGE\n")).unwrap();
        let outcome = load_into_memos(&path).unwrap();
        assert_eq!(outcome.loaded, 1);
        assert_eq!(outcome.warnings.len(), 1);

        // wrong header: file ignored
        std::fs::write(&path, "other-tool v9\nDIM 2 25 12\n").unwrap();
        let outcome = load_into_memos(&path).unwrap();
        assert_eq!(outcome.loaded, 0);
        assert_eq!(outcome.warnings.len(), 1);

        let _ = std::fs::remove_file(&path);
    }
}
