//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use vvgamma_core::suite::{criteria, SuiteOptions};

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut failed = 0;
    for criterion in criteria() {
        let outcome = criterion.run(&opts);
        let status = if outcome.passed() { "PASS" } else { "FAIL" };
        let detail = match &outcome.result {
            Ok(r) => {
                let bad = r.report.failures().count();
                let mut d = format!("{} checks, {bad} failed", r.report.len());
                if !r.warnings.is_empty() {
                    d.push_str(&format!(", {} convergence warnings", r.warnings.len()));
                }
                d
            }
            Err(e) => format!("error: {e}"),
        };
        println!(
            "[{status}] criterion {:>2}: {} ({detail}; {:.2} s of {} s)",
            outcome.id,
            outcome.title,
            outcome.elapsed.as_secs_f64(),
            outcome.budget.as_secs()
        );
        if !outcome.passed() {
            failed += 1;
            if let Ok(r) = &outcome.result {
                for c in r.report.failures().take(10) {
                    println!("         {}: {}", c.name, c.detail);
                }
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
