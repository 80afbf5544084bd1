//! Runs the twelve acceptance criteria and prints one line per criterion.

use std::process::ExitCode;

use modmat::battery::{run_all, Config, Status};

fn main() -> ExitCode {
    let reports = run_all(&Config::default());
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    println!("acceptance: {} of {} criteria failed", failed, reports.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
