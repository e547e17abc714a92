//! Re-runs the shipped fixtures and compares with the frozen JSON reports.
//! Pass a directory to check another corpus.
use std::path::PathBuf;

use plane_curves::cli::verify_corpus;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    let summary = verify_corpus(&dir, false).unwrap();
    for f in &summary.passed {
        println!("pass {f}");
    }
    for f in &summary.failed {
        println!("FAIL {f}");
    }
    for f in &summary.skipped {
        println!("skip {f}");
    }
    std::process::exit(if summary.failed.is_empty() { 0 } else { 1 });
}
