//! The memo behind the permutation engine, and its on-disk format.
//!
//! File layout: one fixed-width header line
//! `qrook-memo v1 records=NNNNNNNNNN sha256=<64 hex digits>` followed by
//! append-only records `n r word coeffs`, where `word` and `coeffs` are
//! comma-separated decimal lists and `coeffs` starts at `q^0` (`0` for the
//! zero polynomial). The digest covers every byte after the header.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use sha2::{Digest, Sha256};

use crate::boards::Perm;
use crate::error::{Error, Result};

const MAGIC: &str = "qrook-memo v1 records=";
const HEADER_LEN: usize = MAGIC.len() + 10 + " sha256=".len() + 64 + 1;

/// Canonical permutation (packed, see [`Perm::pack`]), its size and a rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemoKey {
    pub n: u8,
    pub r: u8,
    pub code: u64,
}

impl MemoKey {
    pub fn new(w: &Perm, r: usize) -> Self {
        MemoKey { n: w.len() as u8, r: r as u8, code: w.pack() }
    }

    pub fn perm(&self) -> Perm {
        Perm::unpack(self.code, self.n as usize)
    }
}

/// Coefficients of a polynomial in `q` from `q^0` up, without trailing zeros.
pub type Coeffs = Arc<[i64]>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MemoStats {
    pub entries: u64,
    pub hits: u64,
    pub misses: u64,
}

/// Concurrent write-once cache from [`MemoKey`] to coefficient vectors.
///
/// Two threads may compute the same key; the first insert wins and later
/// inserts are ignored, which is harmless because values are pure functions
/// of the key.
#[derive(Default)]
pub struct MemoStore {
    map: DashMap<MemoKey, Coeffs>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &MemoKey) -> Option<Coeffs> {
        let found = self.map.get(key).map(|v| v.clone());
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Inserts unless present; returns the stored value.
    pub fn insert(&self, key: MemoKey, value: Coeffs) -> Coeffs {
        self.map.entry(key).or_insert(value).clone()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn stats(&self) -> MemoStats {
        MemoStats {
            entries: self.map.len() as u64,
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    /// Drops entries for permutations of size at least `n`.
    pub fn retain_below(&self, n: usize) {
        self.map.retain(|k, _| (k.n as usize) < n);
    }

    fn sorted_entries(&self) -> Vec<(MemoKey, Coeffs)> {
        let mut v: Vec<_> = self.map.iter().map(|e| (*e.key(), e.value().clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// Appends every entry not yet in the file and rewrites the header.
    /// An existing file is verified first; a corrupt file is an error.
    pub fn save(&self, path: &Path) -> Result<usize> {
        let mut present = HashSet::new();
        let mut count = 0u64;
        if path.exists() {
            for (k, _) in read_file(path)? {
                present.insert(k);
                count += 1;
            }
        } else {
            let mut f = File::create(path)?;
            f.write_all(header(0, &hex::encode(Sha256::digest(b""))).as_bytes())?;
        }
        let mut f = OpenOptions::new().append(true).open(path)?;
        let mut buf = Vec::new();
        let mut written = 0;
        for (k, v) in self.sorted_entries() {
            if present.contains(&k) {
                continue;
            }
            write_record(&mut buf, &k, &v);
            written += 1;
            if buf.len() > 1 << 20 {
                f.write_all(&buf)?;
                buf.clear();
            }
        }
        f.write_all(&buf)?;
        f.flush()?;
        drop(f);

        let digest = body_digest(path)?;
        let mut f = OpenOptions::new().write(true).open(path)?;
        f.seek(SeekFrom::Start(0))?;
        f.write_all(header(count + written as u64, &digest).as_bytes())?;
        Ok(written)
    }

    /// Reads a memo file and adds its records.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let records = read_file(path)?;
        let n = records.len();
        for (k, v) in records {
            self.insert(k, v);
        }
        Ok(n)
    }
}

fn header(count: u64, digest: &str) -> String {
    let h = format!("{MAGIC}{count:010} sha256={digest}\n");
    debug_assert_eq!(h.len(), HEADER_LEN);
    h
}

fn write_record(buf: &mut Vec<u8>, k: &MemoKey, v: &[i64]) {
    let word: Vec<String> = k.perm().word().iter().map(|x| x.to_string()).collect();
    let coeffs: Vec<String> = if v.is_empty() { vec!["0".into()] } else { v.iter().map(|c| c.to_string()).collect() };
    writeln!(buf, "{} {} {} {}", k.n, k.r, word.join(","), coeffs.join(",")).expect("write to Vec");
}

fn body_digest(path: &Path) -> Result<String> {
    let mut f = File::open(path)?;
    f.seek(SeekFrom::Start(HEADER_LEN as u64))?;
    let mut hasher = Sha256::new();
    let mut chunk = vec![0u8; 1 << 16];
    loop {
        let k = f.read(&mut chunk)?;
        if k == 0 {
            break;
        }
        hasher.update(&chunk[..k]);
    }
    Ok(hex::encode(hasher.finalize()))
}

fn integrity(msg: impl Into<String>) -> Error {
    Error::MemoIntegrity(msg.into())
}

fn read_file(path: &Path) -> Result<Vec<(MemoKey, Coeffs)>> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut head = String::new();
    reader.read_line(&mut head)?;
    if head.len() != HEADER_LEN || !head.starts_with(MAGIC) {
        return Err(integrity("bad header"));
    }
    let count: u64 = head[MAGIC.len()..MAGIC.len() + 10].parse().map_err(|_| integrity("bad record count"))?;
    let digest = head.trim_end().rsplit("sha256=").next().unwrap_or_default().to_string();
    if body_digest(path)? != digest {
        return Err(integrity("checksum mismatch"));
    }
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        out.push(parse_record(&line).map_err(|e| integrity(format!("record {}: {e}", lineno + 1)))?);
    }
    if out.len() as u64 != count {
        return Err(integrity(format!("header promises {count} records, found {}", out.len())));
    }
    Ok(out)
}

fn parse_record(line: &str) -> std::result::Result<(MemoKey, Coeffs), String> {
    let fields: Vec<&str> = line.split(' ').collect();
    let [n, r, word, coeffs] = fields[..] else {
        return Err("expected four fields".into());
    };
    let n: u8 = n.parse().map_err(|_| "bad n")?;
    let r: u8 = r.parse().map_err(|_| "bad rank")?;
    let word: Vec<u8> = word.split(',').map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| "bad word")?;
    if word.len() != n as usize || r > n || n > 16 {
        return Err("inconsistent sizes".into());
    }
    let perm = Perm::new(word).map_err(|e| e.to_string())?;
    let mut c: Vec<i64> =
        coeffs.split(',').map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| "bad coefficients")?;
    while c.last() == Some(&0) {
        c.pop();
    }
    Ok((MemoKey::new(&perm, r as usize), c.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(w: &str, r: usize) -> MemoKey {
        MemoKey::new(&w.parse().unwrap(), r)
    }

    #[test]
    fn counters_and_write_once() {
        let m = MemoStore::new();
        assert!(m.get(&key("21", 1)).is_none());
        m.insert(key("21", 1), vec![1, 1].into());
        m.insert(key("21", 1), vec![9].into());
        assert_eq!(&*m.get(&key("21", 1)).unwrap(), &[1, 1]);
        assert_eq!(m.stats(), MemoStats { entries: 1, hits: 1, misses: 1 });
    }

    #[test]
    fn save_append_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.txt");
        let m = MemoStore::new();
        m.insert(key("312", 2), vec![0, 3, -1].into());
        m.insert(key("1", 0), vec![1].into());
        assert_eq!(m.save(&path).unwrap(), 2);
        m.insert(key("10 9 8 7 6 5 4 3 2 1", 10), Vec::new().into());
        assert_eq!(m.save(&path).unwrap(), 1);

        let back = MemoStore::new();
        assert_eq!(back.load(&path).unwrap(), 3);
        assert_eq!(&*back.get(&key("312", 2)).unwrap(), &[0, 3, -1]);
        assert!(back.get(&key("10 9 8 7 6 5 4 3 2 1", 10)).unwrap().is_empty());
    }

    #[test]
    fn corruption_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.txt");
        let m = MemoStore::new();
        m.insert(key("231", 1), vec![1, 2, 3].into());
        m.save(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap().replace("1,2,3", "1,2,4");
        std::fs::write(&path, text).unwrap();
        assert!(matches!(MemoStore::new().load(&path), Err(Error::MemoIntegrity(_))));
        std::fs::write(&path, "garbage\n").unwrap();
        assert!(matches!(MemoStore::new().load(&path), Err(Error::MemoIntegrity(_))));
    }
}
