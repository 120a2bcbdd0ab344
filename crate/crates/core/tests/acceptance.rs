//! Runs every acceptance criterion and prints one line per criterion.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;

use pathsum::selftest::run_all;

const SEED: u64 = 2024;

fn main() -> ExitCode {
    let reports = run_all(SEED);
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
