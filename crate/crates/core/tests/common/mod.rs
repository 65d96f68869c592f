#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use gue_equiv::zeros::{ingest_zeros, ZeroTable};
use gue_equiv::UnfoldedSpectrum;

pub fn table_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt")
}

pub fn table() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| ingest_zeros(table_path()).expect("bundled zero table"))
}

pub fn zeros() -> &'static UnfoldedSpectrum {
    static SPECTRUM: OnceLock<UnfoldedSpectrum> = OnceLock::new();
    SPECTRUM.get_or_init(|| table().unfold().expect("unfolds"))
}
