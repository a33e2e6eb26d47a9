//! Prints one line per acceptance criterion. Verdicts are exact; the only
//! tolerances are the wall-clock budgets in `selftest::BUDGET_MS`.

use std::process::ExitCode;

use lspace_core::selftest::{run_all, seed_from_env};

fn main() -> ExitCode {
    let seed = seed_from_env();
    println!("acceptance suite, seed {seed}");
    let results = run_all(seed);
    for c in &results {
        println!("{c}");
    }
    let failed = results.iter().filter(|c| !c.pass).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
