//! Run a seeded batch of the exact identity suite and print its summary.
//! Re-running with the same seed reproduces every artifact byte for byte.
//!
//! Run with: cargo run --example identity_suite

use advcalc::error::Result;
use advcalc::suite::{run_suite, SuiteConfig, SuiteKind};

fn main() -> Result<()> {
    let out_dir = std::env::temp_dir().join("advcalc_identity_suite");
    let config = SuiteConfig {
        kind: SuiteKind::Identities,
        cases: 100,
        seed: 7,
        out_dir,
        force_fail: None,
    };
    let report = run_suite(&config)?;
    println!("suite,cases,failures,max_violation");
    for row in &report.summary {
        println!(
            "{},{},{},{:e}",
            row.suite, row.cases, row.failures, row.max_violation
        );
    }
    println!();
    println!("cases   -> {}", report.cases_csv.display());
    println!("summary -> {}", report.summary_csv.display());
    assert_eq!(report.failures, 0);
    Ok(())
}
