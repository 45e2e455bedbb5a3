//! Command-line front end for `stablecoh`: input specs, report rendering and
//! the verification suites.

pub mod commands;
pub mod input;
pub mod report;
pub mod verify;

pub use commands::{run, Cli, Command, Format, JobError};
pub use report::Report;

/// Exit status for a finished job.
pub fn exit_code(r: &Report) -> i32 {
    match r.passed {
        Some(false) => 1,
        _ => 0,
    }
}

/// Reads `STABLECOH_THREADS` and sizes the global pool.
pub fn configure_threads() -> Result<(), input::InputError> {
    let Ok(v) = std::env::var("STABLECOH_THREADS") else {
        return Ok(());
    };
    let n = v
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| input::InputError::new("STABLECOH_THREADS", format!("expected a positive integer, got '{v}'")))?;
    // a pool built earlier in the process keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
