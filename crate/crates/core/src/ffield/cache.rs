//! On-disk cache for Zech tables.
//!
//! Layout (little endian): magic `DZGF`, version `u32`, `p: u64`, `e: u32`,
//! `deg: u32`, `deg + 1` modulus coefficients `u64`, `deg` generator
//! coefficients `u64`, table length `u64`, then the table as `u32`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use super::{FieldError, FieldTower, TowerShape};

pub const CACHE_DIR_ENV: &str = "DEPTHZERO_CACHE_DIR";
const MAGIC: &[u8; 4] = b"DZGF";
const VERSION: u32 = 1;

pub fn default_cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(d) => PathBuf::from(d),
        None => std::env::temp_dir().join("depthzero-cache"),
    }
}

fn file_name(p: u64, e: u32, modulus: &[u64]) -> String {
    let m: Vec<String> = modulus.iter().map(u64::to_string).collect();
    format!("gf-{p}-{e}-{}.bin", m.join("_"))
}

pub(super) fn store(dir: &Path, t: &FieldTower) -> Result<(), FieldError> {
    let io_err = |e: io::Error| FieldError::Cache(e.to_string());
    fs::create_dir_all(dir).map_err(io_err)?;
    let mut buf = Vec::with_capacity(64 + 4 * t.zech.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&t.p().to_le_bytes());
    buf.extend_from_slice(&t.e.to_le_bytes());
    let deg = (t.modulus.len() - 1) as u32;
    buf.extend_from_slice(&deg.to_le_bytes());
    for c in &t.modulus {
        buf.extend_from_slice(&c.to_le_bytes());
    }
    for c in &t.generator {
        buf.extend_from_slice(&c.to_le_bytes());
    }
    buf.extend_from_slice(&(t.zech.len() as u64).to_le_bytes());
    for z in &t.zech {
        buf.extend_from_slice(&z.to_le_bytes());
    }
    // write then rename so readers never see a partial file
    let path = dir.join(file_name(t.p(), t.e, &t.modulus));
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io_err)?;
    f.write_all(&buf).map_err(io_err)?;
    f.sync_all().map_err(io_err)?;
    fs::rename(&tmp, &path).map_err(io_err)?;
    Ok(())
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take<const N: usize>(&mut self) -> Option<[u8; N]> {
        let s = self.data.get(self.pos..self.pos + N)?;
        self.pos += N;
        s.try_into().ok()
    }
    fn u32(&mut self) -> Option<u32> {
        self.take::<4>().map(u32::from_le_bytes)
    }
    fn u64(&mut self) -> Option<u64> {
        self.take::<8>().map(u64::from_le_bytes)
    }
}

/// Load a cached tower whose header matches exactly; anything else is a miss.
pub(super) fn load(dir: &Path, p: u64, e: u32, modulus: &[u64]) -> Option<FieldTower> {
    let path = dir.join(file_name(p, e, modulus));
    let mut data = Vec::new();
    fs::File::open(path).ok()?.read_to_end(&mut data).ok()?;
    let mut c = Cursor { data: &data, pos: 0 };
    if &c.take::<4>()? != MAGIC || c.u32()? != VERSION || c.u64()? != p || c.u32()? != e {
        return None;
    }
    let deg = c.u32()? as usize;
    if deg + 1 != modulus.len() {
        return None;
    }
    let stored: Option<Vec<u64>> = (0..=deg).map(|_| c.u64()).collect();
    if stored? != modulus {
        return None;
    }
    let generator: Vec<u64> = (0..deg).map(|_| c.u64()).collect::<Option<_>>()?;
    let len = c.u64()? as usize;
    if len as u64 != p.pow(deg as u32) - 1 {
        return None;
    }
    let body = data.get(c.pos..c.pos + 4 * len)?;
    if c.pos + 4 * len != data.len() {
        return None;
    }
    let zech = body.chunks_exact(4).map(|b| u32::from_le_bytes(b.try_into().unwrap())).collect();
    Some(FieldTower {
        shape: TowerShape { p, q: p.pow(e) },
        e,
        modulus: modulus.to_vec(),
        generator,
        zech,
    })
}
