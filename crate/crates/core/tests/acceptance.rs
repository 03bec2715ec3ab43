use std::process::ExitCode;

use qtrace::acceptance::{run_with, Profile};

fn main() -> ExitCode {
    let reports = run_with(Profile::Desk, &[], |r| println!("{r}"));
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
