mod common;

use gue_equiv::zeros::{
    ingest_zeros, parse_zeros, read_unfolded_cache, sha256_hex, unfold_with_cache,
    write_unfolded_cache, CACHE_MAGIC,
};
use gue_equiv::Error;

#[test]
fn well_formed_tables() {
    let t = parse_zeros("14.134725141734693790\n21.022039638771554993\n").unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(t.precision(), 18);
    let crlf = parse_zeros("# zeros\r\n14.1347\r\n21.0220\r\n").unwrap();
    assert_eq!(crlf.ordinates(), &[14.1347, 21.022]);
    assert_eq!(parse_zeros("  14.5  \n\n\n15\n").unwrap().len(), 2);
}

#[test]
fn malformed_tables_name_the_line() {
    let e = parse_zeros("14.1347\n21.0220\n17.0\n").unwrap_err();
    assert_eq!(e.to_string(), "non-monotone at line 3");
    assert_eq!(parse_zeros("14.1\n14.1\n").unwrap_err(), Error::Duplicate { line: 2 });
    assert!(matches!(parse_zeros("14.1\n-3\n"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(parse_zeros("14.1\ninf\n"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(parse_zeros("14.1\n1,5\n"), Err(Error::Parse { line: 2, .. })));
    assert_eq!(parse_zeros("").unwrap_err(), Error::EmptyTable);
}

#[test]
fn bundled_table() {
    let t = common::table();
    assert_eq!(t.len(), 100_000);
    assert!(t.starts_at_first_zero());
    assert!(t.ordinates().windows(2).all(|w| w[0] < w[1]));
    let bytes = std::fs::read(common::table_path()).unwrap();
    assert_eq!(t.checksum(), sha256_hex(&bytes));
    assert_eq!(t.checksum().len(), 64);
    // γ_100000
    assert!((t.ordinates()[99_999] - 74_920.827_498_994).abs() < 1e-6);
    let cfg = t.configuration().unwrap();
    assert_eq!(cfg.window_start(), 0.0);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("z.txt");
    std::fs::write(&src, "14.134725142\n21.022039639\n25.010857580\n30.424876126\n").unwrap();
    let table = ingest_zeros(&src).unwrap();
    let cache = dir.path().join("u.bin");
    let first = unfold_with_cache(&table, &cache).unwrap();
    let bytes = std::fs::read(&cache).unwrap();
    assert_eq!(bytes[..8], CACHE_MAGIC);
    assert_eq!(bytes.len(), 48 + 8 * 4);
    let second = unfold_with_cache(&table, &cache).unwrap();
    assert_eq!(first, second);

    // a different table does not reuse the cache
    let other = parse_zeros("14.134725142\n21.022039639\n").unwrap();
    assert_eq!(read_unfolded_cache(&cache, &other).unwrap(), None);
    let refreshed = unfold_with_cache(&other, &cache).unwrap();
    assert_eq!(refreshed.len(), 2);

    write_unfolded_cache(&cache, &table, &[1.0, 2.0]).unwrap();
    let mut truncated = std::fs::read(&cache).unwrap();
    truncated.pop();
    std::fs::write(&cache, truncated).unwrap();
    assert!(read_unfolded_cache(&cache, &table).is_err());
    std::fs::write(&cache, b"garbage").unwrap();
    assert!(read_unfolded_cache(&cache, &table).is_err());
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(ingest_zeros("/definitely/not/here.txt"), Err(Error::Io(_))));
}
