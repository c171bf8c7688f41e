//! Runs the self-check suites from code instead of the command line.

use khcausal::cli::verify::{run, Suite, VerifyOptions};

fn main() {
    let opts = VerifyOptions {
        suites: vec![Suite::Models, Suite::Euler, Suite::Oracle],
        max_crossings: 8,
        pairs: 40,
        ..VerifyOptions::default()
    };
    let report = run(&opts);
    for s in &report.suites {
        println!("{:<10} {} ({} checks)", s.name, if s.passed { "ok" } else { "FAILED" }, s.checks);
        for f in &s.failures {
            println!("    {f}");
        }
    }
    std::process::exit(if report.passed { 0 } else { 1 });
}
