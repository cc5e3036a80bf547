//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use epw_core::verify::criterion;

const TITLES: [&str; 9] = [
    "menagerie sextic identities",
    "Chern and Porteous classes",
    "Table of Types: span, degree, splitting",
    "finite-field Θ oracles",
    "local geometry of the sextic",
    "genlag construction for all Types",
    "isotropy equivalence",
    "quadratic-form strata",
    "duality identities",
];

/// Wall-clock limits, where one applies.
fn limit(n: u32) -> Option<Duration> {
    match n {
        1 => Some(Duration::from_secs(60)),
        4 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let verbose = std::env::var_os("EPW_ACCEPTANCE_VERBOSE").is_some();
    let mut all = true;
    for n in 1..=9u32 {
        let start = Instant::now();
        let outcome = criterion(n, 0);
        let elapsed = start.elapsed();
        let (ok, note) = match &outcome {
            Ok(r) => {
                let in_time = limit(n).is_none_or(|l| elapsed <= l);
                let failed: Vec<String> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
                let mut note = format!("{} checks", r.checks.len());
                if !failed.is_empty() {
                    note += &format!("; failed: {}", failed.join("; "));
                }
                if !in_time {
                    note += &format!("; over the {:?} limit", limit(n).unwrap());
                }
                (r.passed() && in_time && !r.checks.is_empty(), note)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!(
            "{} criterion {n}: {} ({:.1} s, {note})",
            if ok { "PASS" } else { "FAIL" },
            TITLES[n as usize - 1],
            elapsed.as_secs_f64()
        );
        if verbose {
            if let Ok(r) = &outcome {
                print!("{r}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
