//! Runs the full equivalence suite on the bundled zero table, one line per
//! criterion, and exits nonzero if any fatal criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;

use gue_equiv::verify::{run_suite, suite_passed, SuiteConfig, Tolerances};
use gue_equiv::zeros::ingest_zeros;

fn main() -> ExitCode {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt");
    let zeros = match ingest_zeros(&path).and_then(|t| t.unfold()) {
        Ok(z) => Some(z),
        Err(e) => {
            eprintln!("zero table unavailable: {e}");
            None
        }
    };
    let results = run_suite(zeros.as_ref(), &SuiteConfig::default(), &Tolerances::default(), &[]);
    println!();
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("\nacceptance: {passed} of {} criteria passed", results.len());
    if suite_passed(&results) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
