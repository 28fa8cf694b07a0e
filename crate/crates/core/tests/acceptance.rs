//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.
//! Set `ROWLAB_ACCEPTANCE_ONLY=3,7` to run a subset.

use std::process::ExitCode;
use std::time::Instant;

use rowlab_core::audit::{run_check, AuditConfig, Status, CHECKS};

fn main() -> ExitCode {
    let only: Option<Vec<u32>> = std::env::var("ROWLAB_ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let config = AuditConfig::default();
    let mut failed = 0;
    for (id, key, _) in CHECKS {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let check = run_check(id, &config);
        let status = match check.status {
            Status::Pass => "PASS",
            _ => {
                failed += 1;
                "FAIL"
            }
        };
        println!("{status} criterion {id:>2} {key}: {} [{:.1}s]", check.detail, start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
