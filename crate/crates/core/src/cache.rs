//! On-disk cache files.
//!
//! `gram.bin`: magic `ZLABGRAM`, u32 format version, u32 correction order,
//! f64 t_min, then one 24-byte record per Gram point `(u64 nu, f64 t, f64 z)`.
//!
//! `hl.bin`: magic `ZLABHLCK`, u32 format version, u32 correction order,
//! f64 t_min, f64 integral over [0, t_min], then one 20-byte checkpoint per
//! Gram point `(f64 T, f64 I, u32 quad_order)` with I the integral of Z^2 over
//! [0, T].
//!
//! All fields are little-endian. Both files are append-only; a torn trailing
//! record is dropped on open.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{LabError, Result};
use crate::gram::GramRecord;

pub const FORMAT_VERSION: u32 = 1;
pub const GRAM_MAGIC: &[u8; 8] = b"ZLABGRAM";
pub const HL_MAGIC: &[u8; 8] = b"ZLABHLCK";
pub const GRAM_FILE: &str = "gram.bin";
pub const HL_FILE: &str = "hl.bin";

const GRAM_HEADER_LEN: usize = 8 + 4 + 4 + 8;
const GRAM_RECORD_LEN: usize = 24;
const HL_HEADER_LEN: usize = 8 + 4 + 4 + 8 + 8;
const HL_RECORD_LEN: usize = 20;

/// Settings a cache must have been produced with to be reusable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CacheKey {
    pub correction_order: u32,
    pub t_min: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint {
    pub t: f64,
    pub integral: f64,
    pub quad_order: u32,
}

fn bad(path: &Path, detail: impl Into<String>) -> LabError {
    LabError::CacheFormat {
        path: path.display().to_string(),
        detail: detail.into(),
    }
}

fn read_all(path: &Path) -> Result<Option<Vec<u8>>> {
    match File::open(path) {
        Ok(mut f) => {
            let mut buf = Vec::new();
            f.read_to_end(&mut buf)?;
            Ok(Some(buf))
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(b[at..at + 4].try_into().unwrap())
}

fn u64_at(b: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(b[at..at + 8].try_into().unwrap())
}

fn f64_at(b: &[u8], at: usize) -> f64 {
    f64::from_bits(u64_at(b, at))
}

fn check_header(path: &Path, buf: &[u8], magic: &[u8; 8], key: CacheKey) -> Result<bool> {
    if &buf[..8] != magic {
        return Err(bad(path, "bad magic"));
    }
    let version = u32_at(buf, 8);
    if version != FORMAT_VERSION {
        return Err(bad(path, format!("unsupported format version {version}")));
    }
    Ok(u32_at(buf, 12) == key.correction_order && f64_at(buf, 16).to_bits() == key.t_min.to_bits())
}

/// Append-only writer for one cache file.
#[derive(Debug)]
pub struct AppendFile {
    path: PathBuf,
}

impl AppendFile {
    fn append(&self, bytes: &[u8]) -> Result<()> {
        let f = OpenOptions::new().append(true).open(&self.path)?;
        let mut w = BufWriter::new(f);
        w.write_all(bytes)?;
        w.flush()?;
        Ok(())
    }

    /// Creates (or truncates) the file with the given header.
    fn create(path: PathBuf, header: &[u8]) -> Result<Self> {
        let mut f = File::create(&path)?;
        f.write_all(header)?;
        f.sync_all()?;
        Ok(Self { path })
    }

    /// Drops a torn trailing record so appends stay aligned.
    fn reopen(path: PathBuf, valid_len: u64) -> Result<Self> {
        let f = OpenOptions::new().write(true).open(&path)?;
        if f.metadata()?.len() != valid_len {
            f.set_len(valid_len)?;
        }
        Ok(Self { path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

fn header(magic: &[u8; 8], key: CacheKey) -> Vec<u8> {
    let mut h = Vec::with_capacity(GRAM_HEADER_LEN);
    h.extend_from_slice(magic);
    h.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    h.extend_from_slice(&key.correction_order.to_le_bytes());
    h.extend_from_slice(&key.t_min.to_le_bytes());
    h
}

/// Gram-point table on disk.
#[derive(Debug)]
pub struct GramFile {
    file: AppendFile,
}

impl GramFile {
    /// Opens `dir/gram.bin`, returning the valid contiguous prefix of records.
    /// A file written under a different key is discarded and recreated.
    pub fn open(dir: &Path, key: CacheKey) -> Result<(Self, Vec<GramRecord>)> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(GRAM_FILE);
        let Some(buf) = read_all(&path)? else {
            return Ok((Self { file: AppendFile::create(path, &header(GRAM_MAGIC, key))? }, Vec::new()));
        };
        if buf.len() < GRAM_HEADER_LEN || !check_header(&path, &buf, GRAM_MAGIC, key)? {
            return Ok((Self { file: AppendFile::create(path, &header(GRAM_MAGIC, key))? }, Vec::new()));
        }
        let body = &buf[GRAM_HEADER_LEN..];
        let mut records = Vec::with_capacity(body.len() / GRAM_RECORD_LEN);
        for (i, rec) in body.chunks_exact(GRAM_RECORD_LEN).enumerate() {
            let nu = u64_at(rec, 0);
            let t = f64_at(rec, 8);
            let z = f64_at(rec, 16);
            let contiguous = nu == i as u64;
            let increasing = records.last().is_none_or(|p: &GramRecord| t > p.t);
            if !contiguous || !increasing || !t.is_finite() || !z.is_finite() {
                break;
            }
            records.push(GramRecord { nu, t, z });
        }
        let valid = (GRAM_HEADER_LEN + records.len() * GRAM_RECORD_LEN) as u64;
        Ok((Self { file: AppendFile::reopen(path, valid)? }, records))
    }

    pub fn append(&self, records: &[GramRecord]) -> Result<()> {
        let mut bytes = Vec::with_capacity(records.len() * GRAM_RECORD_LEN);
        for r in records {
            bytes.extend_from_slice(&r.nu.to_le_bytes());
            bytes.extend_from_slice(&r.t.to_le_bytes());
            bytes.extend_from_slice(&r.z.to_le_bytes());
        }
        self.file.append(&bytes)
    }

    pub fn path(&self) -> &Path {
        self.file.path()
    }
}

/// Hardy-Littlewood checkpoint table on disk.
#[derive(Debug)]
pub struct HlFile {
    file: AppendFile,
}

impl HlFile {
    /// Opens `dir/hl.bin`. Checkpoints with another quad order are discarded
    /// along with everything after them.
    pub fn open(dir: &Path, key: CacheKey, quad_order: u32, small_t: f64) -> Result<(Self, Vec<Checkpoint>)> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(HL_FILE);
        let fresh = |path: PathBuf| -> Result<Self> {
            let mut h = header(HL_MAGIC, key);
            h.extend_from_slice(&small_t.to_le_bytes());
            Ok(Self { file: AppendFile::create(path, &h)? })
        };
        let Some(buf) = read_all(&path)? else {
            return Ok((fresh(path)?, Vec::new()));
        };
        if buf.len() < HL_HEADER_LEN
            || !check_header(&path, &buf, HL_MAGIC, key)?
            || f64_at(&buf, 24).to_bits() != small_t.to_bits()
        {
            return Ok((fresh(path)?, Vec::new()));
        }
        let mut out = Vec::new();
        for rec in buf[HL_HEADER_LEN..].chunks_exact(HL_RECORD_LEN) {
            let cp = Checkpoint {
                t: f64_at(rec, 0),
                integral: f64_at(rec, 8),
                quad_order: u32_at(rec, 16),
            };
            if cp.quad_order != quad_order || !cp.integral.is_finite() {
                break;
            }
            out.push(cp);
        }
        let valid = (HL_HEADER_LEN + out.len() * HL_RECORD_LEN) as u64;
        Ok((Self { file: AppendFile::reopen(path, valid)? }, out))
    }

    pub fn append(&self, checkpoints: &[Checkpoint]) -> Result<()> {
        let mut bytes = Vec::with_capacity(checkpoints.len() * HL_RECORD_LEN);
        for c in checkpoints {
            bytes.extend_from_slice(&c.t.to_le_bytes());
            bytes.extend_from_slice(&c.integral.to_le_bytes());
            bytes.extend_from_slice(&c.quad_order.to_le_bytes());
        }
        self.file.append(&bytes)
    }

    /// Truncates to `count` checkpoints (used when the tail disagrees with the
    /// Gram table it was built on).
    pub fn truncate(&self, count: usize) -> Result<()> {
        let f = OpenOptions::new().write(true).open(self.file.path())?;
        f.set_len((HL_HEADER_LEN + count * HL_RECORD_LEN) as u64)?;
        Ok(())
    }
}

/// Reads the small-t constant stored in an `hl.bin` header, if any.
pub fn read_small_t_integral(dir: &Path) -> Result<Option<f64>> {
    let path = dir.join(HL_FILE);
    Ok(match read_all(&path)? {
        Some(buf) if buf.len() >= HL_HEADER_LEN && &buf[..8] == HL_MAGIC => Some(f64_at(&buf, 24)),
        _ => None,
    })
}

/// CSV export of Gram records with header `nu,t,z`; values are written with
/// full round-trip precision.
pub fn write_gram_csv<W: Write>(mut out: W, records: &[GramRecord]) -> Result<()> {
    writeln!(out, "nu,t,z")?;
    for r in records {
        writeln!(out, "{},{:?},{:?}", r.nu, r.t, r.z)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key() -> CacheKey {
        CacheKey {
            correction_order: 8,
            t_min: 10.0,
        }
    }

    #[test]
    fn gram_roundtrip_and_torn_tail() {
        let dir = tempfile::tempdir().unwrap();
        let (f, recs) = GramFile::open(dir.path(), key()).unwrap();
        assert!(recs.is_empty());
        let data: Vec<_> = (0..5)
            .map(|i| GramRecord { nu: i, t: 17.0 + i as f64, z: 0.5 - i as f64 })
            .collect();
        f.append(&data).unwrap();
        // simulate a crash halfway through a record
        let path = f.path().to_path_buf();
        let mut raw = OpenOptions::new().append(true).open(&path).unwrap();
        raw.write_all(&[1, 2, 3, 4, 5]).unwrap();
        drop(raw);

        let (f2, back) = GramFile::open(dir.path(), key()).unwrap();
        assert_eq!(back, data);
        assert_eq!(
            std::fs::metadata(f2.path()).unwrap().len() as usize,
            GRAM_HEADER_LEN + 5 * GRAM_RECORD_LEN
        );
    }

    #[test]
    fn key_mismatch_discards() {
        let dir = tempfile::tempdir().unwrap();
        let (f, _) = GramFile::open(dir.path(), key()).unwrap();
        f.append(&[GramRecord { nu: 0, t: 17.8, z: 2.3 }]).unwrap();
        let other = CacheKey { correction_order: 4, ..key() };
        let (_, recs) = GramFile::open(dir.path(), other).unwrap();
        assert!(recs.is_empty());
    }

    #[test]
    fn bad_magic_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join(GRAM_FILE), b"NOTACACHEFILE___________").unwrap();
        assert!(matches!(
            GramFile::open(dir.path(), key()),
            Err(LabError::CacheFormat { .. })
        ));
    }

    #[test]
    fn hl_checkpoints_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let (f, cps) = HlFile::open(dir.path(), key(), 8, 9.98).unwrap();
        assert!(cps.is_empty());
        let data = vec![
            Checkpoint { t: 17.8, integral: 20.0, quad_order: 8 },
            Checkpoint { t: 23.1, integral: 25.0, quad_order: 8 },
        ];
        f.append(&data).unwrap();
        assert_eq!(read_small_t_integral(dir.path()).unwrap(), Some(9.98));
        let (_, back) = HlFile::open(dir.path(), key(), 8, 9.98).unwrap();
        assert_eq!(back, data);
        let (_, other_order) = HlFile::open(dir.path(), key(), 16, 9.98).unwrap();
        assert!(other_order.is_empty());
    }

    #[test]
    fn csv_header() {
        let mut buf = Vec::new();
        write_gram_csv(&mut buf, &[GramRecord { nu: 0, t: 17.5, z: 2.25 }]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "nu,t,z\n0,17.5,2.25\n");
    }
}
