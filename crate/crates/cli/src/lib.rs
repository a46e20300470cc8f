//! Batch front end for `nakagami-rmt`: samplers, spacing experiments,
//! correspondence checks, fitting and the distance scenario, emitting CSV or
//! JSON.

pub mod args;
pub mod commands;
pub mod output;

pub use args::{parse_args, ParseOutcome, RunConfig};
pub use commands::{build_report, dispatch};

/// Parses `argv` and runs it. Returns the process exit code: 0 success,
/// 1 usage error, 2 numeric, data or I/O failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(argv) {
        Ok(config) => dispatch(&config),
        Err(ParseOutcome::Info(text)) => {
            print!("{text}");
            0
        }
        Err(ParseOutcome::Usage(text)) => {
            eprint!("{text}");
            1
        }
    }
}
