//! Binary series file.
//!
//! ```text
//! offset  size  field
//! 0       4     magic, ASCII "LREC"
//! 4       4     version, u32 LE = 1
//! 8       8     n, u64 LE
//! 16      8n    a[0..n], f64 LE
//! 16+8n   8n    b[0..n], f64 LE
//! 16+16n  8     x0, f64 LE
//! ```
//!
//! Version 1 implies f64 elements. Files must be exactly `24 + 16n` bytes.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use linrec::CoefficientSeries;

use crate::error::CliError;

pub const MAGIC: &[u8; 4] = b"LREC";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 16;

pub fn encoded_len(n: usize) -> usize {
    HEADER_LEN + (2 * n + 1) * 8
}

pub fn encode(s: &CoefficientSeries) -> Vec<u8> {
    let mut buf = Vec::with_capacity(encoded_len(s.len()));
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(s.len() as u64).to_le_bytes());
    for v in s.a().iter().chain(s.b()).chain(std::iter::once(&s.x0())) {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    buf
}

pub fn decode(bytes: &[u8]) -> Result<CoefficientSeries, CliError> {
    if bytes.len() < HEADER_LEN {
        return Err(CliError::Format(format!(
            "file is {} bytes, shorter than the {HEADER_LEN}-byte header",
            bytes.len()
        )));
    }
    if &bytes[..4] != MAGIC {
        return Err(CliError::Format("bad magic, expected \"LREC\"".into()));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(CliError::Format(format!(
            "unsupported version {version}, expected {VERSION}"
        )));
    }
    let n = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let expected = usize::try_from(n)
        .ok()
        .and_then(|n| n.checked_mul(16)?.checked_add(HEADER_LEN + 8));
    if expected != Some(bytes.len()) {
        return Err(CliError::Format(format!(
            "header says n = {n} but payload is {} bytes",
            bytes.len() - HEADER_LEN
        )));
    }
    let n = n as usize;
    let mut floats = bytes[HEADER_LEN..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()));
    let a: Vec<f64> = floats.by_ref().take(n).collect();
    let b: Vec<f64> = floats.by_ref().take(n).collect();
    let x0 = floats.next().expect("length checked above");
    CoefficientSeries::new(a, b, x0).map_err(|e| CliError::Format(e.to_string()))
}

pub fn write_series<W: Write>(mut w: W, s: &CoefficientSeries) -> Result<(), CliError> {
    w.write_all(&encode(s))?;
    Ok(())
}

pub fn read_series<R: Read>(mut r: R) -> Result<CoefficientSeries, CliError> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    decode(&bytes)
}

pub fn save(path: &Path, s: &CoefficientSeries) -> Result<(), CliError> {
    fs::write(path, encode(s))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<CoefficientSeries, CliError> {
    decode(&fs::read(path)?)
}
