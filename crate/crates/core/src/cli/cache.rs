//! Append-only JSONL cache of sweep rows keyed by `(n, m)`.
//!
//! Each line carries a SHA-256 checksum of its exact fields; lines that fail
//! to parse or to match their checksum are ignored and recomputed.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::sweep::SweepRow;

#[derive(Debug, Serialize, Deserialize)]
struct CacheLine {
    n: i64,
    #[serde(flatten)]
    row: SweepRow,
    checksum: String,
}

fn checksum(n: i64, row: &SweepRow) -> String {
    let text = format!(
        "{n}|{}|{}|{}|{}|{}",
        row.m, row.hsum, row.mu, row.chi_orb, row.h1
    );
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug)]
pub struct SweepCache {
    path: PathBuf,
    rows: BTreeMap<(i64, i64), SweepRow>,
    /// Lines skipped as unreadable or corrupted.
    pub rejected: usize,
}

impl SweepCache {
    /// Loads `path`, treating a missing file as empty.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut cache = SweepCache {
            path: path.to_path_buf(),
            rows: BTreeMap::new(),
            rejected: 0,
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheLine>(&line) {
                Ok(c) if c.checksum == checksum(c.n, &c.row) => {
                    cache.rows.insert((c.n, c.row.m), c.row);
                }
                _ => cache.rejected += 1,
            }
        }
        Ok(cache)
    }

    pub fn get(&self, n: i64, m: i64) -> Option<&SweepRow> {
        self.rows.get(&(n, m))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Appends rows to the file and the in-memory index.
    pub fn append(&mut self, n: i64, rows: &[SweepRow]) -> io::Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let mut buf = String::new();
        for row in rows {
            let line = CacheLine {
                n,
                row: row.clone(),
                checksum: checksum(n, row),
            };
            buf.push_str(&serde_json::to_string(&line).map_err(io::Error::other)?);
            buf.push('\n');
        }
        file.write_all(buf.as_bytes())?;
        file.sync_data()?;
        for row in rows {
            self.rows.insert((n, row.m), row.clone());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn row(m: i64) -> SweepRow {
        SweepRow {
            m,
            hsum: m * 2,
            mu: Rational::new(1, 8),
            chi_orb: Rational::new(-3, 8),
            h1: Rational::from(m),
        }
    }

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut c = SweepCache::open(&path).unwrap();
        assert!(c.is_empty());
        c.append(3, &[row(1), row(2)]).unwrap();
        let again = SweepCache::open(&path).unwrap();
        assert_eq!(again.get(3, 2), Some(&row(2)));
        assert_eq!(again.get(2, 2), None);

        let text = std::fs::read_to_string(&path)
            .unwrap()
            .replacen("\"hsum\":4", "\"hsum\":5", 1);
        std::fs::write(&path, text + "garbage\n").unwrap();
        let bad = SweepCache::open(&path).unwrap();
        assert_eq!(bad.rejected, 2);
        assert_eq!(bad.len(), 1);
        assert_eq!(bad.get(3, 2), None);
    }
}
