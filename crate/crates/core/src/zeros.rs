//! Plain-text zero tables and the binary cache of unfolded values.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pointproc::PointConfiguration;
use crate::unfold::{unfold, UnfoldedSpectrum};

/// Validated, strictly increasing ordinates read from a text table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source: String,
    /// Largest number of decimal places on any line.
    precision: usize,
    /// SHA-256 of the file contents, lowercase hex.
    checksum: String,
}

/// Reads a table: one decimal ordinate per line, `#` comments, LF or CRLF.
pub fn ingest_zeros<P: AsRef<Path>>(path: P) -> Result<ZeroTable> {
    let bytes = fs::read(path.as_ref())?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::Parse {
        line: 0,
        message: format!("not valid text: {e}"),
    })?;
    let mut table = parse_zeros(text)?;
    table.source = path.as_ref().display().to_string();
    table.checksum = sha256_hex(&bytes);
    Ok(table)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Parses table text; the checksum covers `text` itself.
pub fn parse_zeros(text: &str) -> Result<ZeroTable> {
    let mut ordinates: Vec<f64> = Vec::new();
    let mut precision = 0;
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw).trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !line.is_ascii() {
            return Err(Error::Parse {
                line: line_no,
                message: "non-ASCII characters".into(),
            });
        }
        let value: f64 = line.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("not a number: {line:?}"),
        })?;
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("ordinate must be positive and finite, got {value}"),
            });
        }
        if let Some(&last) = ordinates.last() {
            if value == last {
                return Err(Error::Duplicate { line: line_no });
            }
            if value < last {
                return Err(Error::NonMonotone { line: line_no });
            }
        }
        if let Some(dot) = line.find('.') {
            let digits = line[dot + 1..]
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .count();
            precision = precision.max(digits);
        }
        ordinates.push(value);
    }
    if ordinates.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(ZeroTable {
        ordinates,
        source: String::from("<memory>"),
        precision,
        checksum: sha256_hex(text.as_bytes()),
    })
}

impl ZeroTable {
    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    /// Whether the first ordinate is the lowest zero `14.1347…`.
    pub fn starts_at_first_zero(&self) -> bool {
        let g = self.ordinates[0];
        g > 14.1 && g < 14.2
    }

    /// Ordinates as a configuration. A table starting at the first zero covers
    /// `(0, γ_N]`; otherwise the window opens half a gap below the first entry.
    pub fn configuration(&self) -> Result<PointConfiguration> {
        let last = *self.ordinates.last().expect("tables are nonempty");
        let start = if self.starts_at_first_zero() {
            0.0
        } else {
            let g = self.ordinates[0];
            let gap = self.ordinates.get(1).map_or(1.0, |x| x - g);
            g - 0.5 * gap
        };
        PointConfiguration::with_window(self.ordinates.clone(), start, last)
    }

    /// First `n` ordinates as a new table (same source and checksum).
    pub fn prefix(&self, n: usize) -> ZeroTable {
        ZeroTable {
            ordinates: self.ordinates[..n.min(self.len()).max(1)].to_vec(),
            ..self.clone()
        }
    }

    pub fn unfold(&self) -> Result<UnfoldedSpectrum> {
        unfold(&self.configuration()?)
    }
}

/// Magic header of the unfolded-value cache.
pub const CACHE_MAGIC: [u8; 8] = *b"GUEUNF01";

/// Cache layout: magic, 32-byte table checksum, `u64` count, then `count`
/// `f64` values, all little-endian.
pub fn write_unfolded_cache<P: AsRef<Path>>(path: P, table: &ZeroTable, unfolded: &[f64]) -> Result<()> {
    let mut out = Vec::with_capacity(48 + 8 * unfolded.len());
    out.extend_from_slice(&CACHE_MAGIC);
    out.extend_from_slice(&checksum_bytes(table.checksum())?);
    out.extend_from_slice(&(unfolded.len() as u64).to_le_bytes());
    for v in unfolded {
        out.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(path, out)?;
    Ok(())
}

fn checksum_bytes(hex: &str) -> Result<[u8; 32]> {
    let mut out = [0u8; 32];
    if hex.len() != 64 {
        return Err(Error::InvalidParameter(format!("checksum {hex:?}")));
    }
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = u8::from_str_radix(&hex[2 * i..2 * i + 2], 16)
            .map_err(|_| Error::InvalidParameter(format!("checksum {hex:?}")))?;
    }
    Ok(out)
}

/// Reads a cache written for `table`; `Ok(None)` if it belongs to other data.
pub fn read_unfolded_cache<P: AsRef<Path>>(path: P, table: &ZeroTable) -> Result<Option<Vec<f64>>> {
    let bytes = fs::read(path)?;
    if bytes.len() < 48 || bytes[..8] != CACHE_MAGIC {
        return Err(Error::Parse {
            line: 0,
            message: "not an unfolded-value cache".into(),
        });
    }
    if bytes[8..40] != checksum_bytes(table.checksum())? {
        return Ok(None);
    }
    let count = u64::from_le_bytes(bytes[40..48].try_into().expect("8 bytes")) as usize;
    if bytes.len() != 48 + 8 * count {
        return Err(Error::Parse {
            line: 0,
            message: format!("cache truncated: {count} values declared"),
        });
    }
    Ok(Some(
        bytes[48..]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect(),
    ))
}

/// Unfolds a table, reusing `cache` when it matches and refreshing it otherwise.
pub fn unfold_with_cache<P: AsRef<Path>>(table: &ZeroTable, cache: P) -> Result<UnfoldedSpectrum> {
    let fresh = table.unfold()?;
    let cache = cache.as_ref();
    if cache.exists() {
        if let Ok(Some(values)) = read_unfolded_cache(cache, table) {
            if values.len() == table.len() {
                let u = fresh.unfolded();
                let unfolded =
                    PointConfiguration::with_window(values, u.window_start(), u.window_end())?;
                return UnfoldedSpectrum::new(fresh.raw().clone(), unfolded, fresh.provenance());
            }
        }
    }
    write_unfolded_cache(cache, table, fresh.unfolded().points())?;
    Ok(fresh)
}
