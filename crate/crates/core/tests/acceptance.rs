//! Runs every verification suite with its default parameters and prints one line per
//! criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use polyprod::verify::suites;

fn main() -> ExitCode {
    let mut failed = 0;
    for s in suites() {
        let params = s.defaults();
        let start = Instant::now();
        let result = s.run(params);
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(rep) => {
                let status = if rep.passed { "PASS" } else { "FAIL" };
                println!(
                    "criterion {:>2} [{}] {status} ({} checks, {secs:.1}s)",
                    rep.criterion, rep.suite, rep.checked
                );
                for d in &rep.details {
                    println!("    {d}");
                }
                if !rep.passed {
                    failed += 1;
                }
            }
            Err(e) => {
                println!("criterion {:>2} [{}] FAIL ({secs:.1}s): {e}", s.criterion(), s.name());
                failed += 1;
            }
        }
    }
    println!("{} of {} criteria passed", suites().len() - failed, suites().len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
