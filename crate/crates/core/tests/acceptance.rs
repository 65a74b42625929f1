//! The thirteen acceptance criteria, one line each, exact arithmetic throughout.
//! Runs without the libtest harness so every line is printed even when all pass.

use std::process::ExitCode;

use hopf_lift::cli::suite::{criteria, run_criterion};

fn main() -> ExitCode {
    let results: Vec<_> = criteria()
        .iter()
        .map(|c| {
            let r = run_criterion(c);
            println!("{}", r.line());
            r
        })
        .collect();
    let failed: Vec<String> = results.iter().filter(|r| !r.pass).map(|r| r.id.to_string()).collect();
    println!("acceptance: {}/{} criteria pass", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
