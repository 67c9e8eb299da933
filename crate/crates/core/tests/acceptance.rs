//! Runs every acceptance criterion and prints one line per criterion.
//! Exits non-zero if any criterion fails.

use std::process::ExitCode;

use treeparity::acceptance::{run_criterion, AcceptanceConfig, CRITERIA};

fn main() -> ExitCode {
    let cfg = AcceptanceConfig::default();
    let mut failed = 0;
    for (id, title) in CRITERIA {
        match run_criterion(id, &cfg) {
            Ok(report) => {
                println!("{report}");
                if !report.passed() {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("FAIL {id:>2}  {title:<22} error: {e}");
                failed += 1;
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
