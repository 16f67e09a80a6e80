//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.
//!
//! `PWLAB_PROFILE=fast` selects the CI profile; positional arguments select criterion ids.

use std::process::ExitCode;
use std::time::Instant;

use pwlab::verify::{VerifyProfile, CRITERIA};

fn main() -> ExitCode {
    let profile_name = std::env::var("PWLAB_PROFILE").unwrap_or_else(|_| "desk".into());
    let Some(profile) = VerifyProfile::by_name(&profile_name) else {
        eprintln!("unknown profile {profile_name:?}");
        return ExitCode::from(2);
    };
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    println!(
        "acceptance profile {} (N = {}, M = {}, n_max = {})",
        profile.name, profile.half_width, profile.grid, profile.n_max
    );
    let start = Instant::now();
    let mut failed = 0;
    let mut ran = 0;
    for c in CRITERIA.iter().filter(|c| selected.is_empty() || selected.contains(&c.id)) {
        let t = Instant::now();
        let report = c.run(&profile);
        println!("{} [{:.2?}]", report.line(), t.elapsed());
        ran += 1;
        if !report.pass {
            failed += 1;
        }
    }
    let elapsed = start.elapsed();
    println!("acceptance: {} passed, {failed} failed, {elapsed:.2?}", ran - failed);
    if elapsed.as_secs() >= 300 {
        println!("acceptance: profile exceeded the 5 minute budget");
        failed += 1;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
