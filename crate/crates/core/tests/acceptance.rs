//! Runs the nine acceptance criteria and prints one line per criterion.

use std::process::ExitCode;

fn main() -> ExitCode {
    let results = cyclic_blocks::acceptance::run(&|line| eprintln!("{line}"));
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
