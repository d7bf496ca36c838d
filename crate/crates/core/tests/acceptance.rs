//! One line per acceptance criterion, at the standard sizes.

use std::io::Write;
use std::time::Instant;

use mcfl_on::selftest::{run_criterion, DEFAULT_SEED};

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in 1..=8 {
        let start = Instant::now();
        let report = run_criterion(id, DEFAULT_SEED).expect("known criterion");
        // written to the raw handle so the lines survive output capture
        let _ = writeln!(std::io::stderr(), "{report} [{:.1}s]", start.elapsed().as_secs_f64());
        if !report.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
