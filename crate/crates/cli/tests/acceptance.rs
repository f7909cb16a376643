//! Runs every acceptance criterion on full-scale grids and prints one
//! PASS/FAIL line per criterion. A criterion fails on any failing item or
//! when it overruns its time budget.

use std::process::ExitCode;

use gft_cli::suite::{run_criterion, CRITERIA};
use gft_core::oracles::OracleConfig;

fn main() -> ExitCode {
    let oracle = OracleConfig::default();
    let mut failed = 0;
    for (id, ..) in CRITERIA {
        let c = run_criterion(id, &oracle);
        let ok = c.passed() && c.within_budget();
        println!(
            "{} criterion {}: {} ({:.2} s of {} s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            c.elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        for item in c.items.iter().filter(|i| !i.pass) {
            println!(
                "    {}: measured {} ({})",
                item.name, item.measured, item.expected
            );
        }
        if !ok {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria fail", CRITERIA.len());
        ExitCode::FAILURE
    }
}
