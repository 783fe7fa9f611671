//! The signal file: one JSON header line followed by row-major interleaved
//! `(re, im)` little-endian `f64` pairs.

use std::fs;
use std::io::Write;
use std::path::Path;

use hsig_core::{Domain, Grid, Signal, C64};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const MAGIC: &str = "HSIG";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub magic: String,
    pub version: u32,
    pub dim: usize,
    pub samples_per_axis: Vec<usize>,
    pub half_extent: Vec<f64>,
    pub domain: DomainTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainTag {
    Space,
    Frequency,
}

impl From<Domain> for DomainTag {
    fn from(d: Domain) -> Self {
        match d {
            Domain::Space => DomainTag::Space,
            Domain::Frequency => DomainTag::Frequency,
        }
    }
}

impl From<DomainTag> for Domain {
    fn from(d: DomainTag) -> Self {
        match d {
            DomainTag::Space => Domain::Space,
            DomainTag::Frequency => Domain::Frequency,
        }
    }
}

pub fn header_of(s: &Signal) -> Header {
    let grid = s.grid();
    Header {
        magic: MAGIC.into(),
        version: VERSION,
        dim: grid.dim(),
        samples_per_axis: grid.samples_per_axis().to_vec(),
        half_extent: grid.half_extent().to_vec(),
        domain: s.domain().into(),
    }
}

pub fn encode(s: &Signal) -> Vec<u8> {
    let mut out = serde_json::to_vec(&header_of(s)).expect("header serializes");
    out.push(b'\n');
    out.reserve(16 * s.len());
    for v in s.values() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    out
}

/// Parses a complete file image; `path` only labels errors.
pub fn decode(bytes: &[u8], path: &Path) -> Result<Signal, CliError> {
    let newline = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| CliError::format(path, "missing header line"))?;
    let header: Header = serde_json::from_slice(&bytes[..newline])
        .map_err(|e| CliError::format(path, format!("bad header: {e}")))?;
    if header.magic != MAGIC {
        return Err(CliError::format(path, format!("bad magic {:?}", header.magic)));
    }
    if header.version != VERSION {
        return Err(CliError::format(path, format!("unsupported version {}", header.version)));
    }
    if header.samples_per_axis.len() != header.dim || header.half_extent.len() != header.dim {
        return Err(CliError::format(path, "header dim disagrees with the axis lists"));
    }
    let grid = Grid::new(&header.samples_per_axis, &header.half_extent)
        .map_err(|e| CliError::format(path, e.to_string()))?;
    let payload = &bytes[newline + 1..];
    let expected = grid.len().checked_mul(16).ok_or_else(|| CliError::format(path, "payload size overflows"))?;
    if payload.len() != expected {
        return Err(CliError::format(
            path,
            format!("payload has {} bytes, header requires {expected}", payload.len()),
        ));
    }
    let values = payload
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..].try_into().unwrap());
            C64::new(re, im)
        })
        .collect();
    Ok(Signal::new(grid, values, header.domain.into())?)
}

pub fn read(path: &Path) -> Result<Signal, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    decode(&bytes, path)
}

pub fn write(path: &Path, s: &Signal) -> Result<(), CliError> {
    let mut file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    file.write_all(&encode(s)).map_err(|e| CliError::io(path, e))
}
