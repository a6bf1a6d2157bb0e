//! Command-line front end for `rangeavoid`.
//!
//! Every command writes its artifact (a `.vec`, `.nc0`, `.poly`, layout,
//! certificate or CSV file) to the path given, or to standard output when the
//! path is omitted, and prints a line-oriented `key=value` report to standard
//! error on success and on failure alike.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | internal error (a bug) |
//! | 2 | unreadable file, parse error, bad parameter |
//! | 3 | instance outside the solver's regime (stretch or locality) |
//! | 4 | enumeration, branching or rigidity budget exceeded |
//! | 5 | verification failed: the point lies in the range |

pub mod args;
pub mod bench;
mod commands;
pub mod report;

use std::fmt;
use std::path::PathBuf;

use rangeavoid::{Error, ErrorClass};

pub use args::{Cli, Command};
pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_STRETCH: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Usage(String),
    /// The point the command checked lies in the range.
    InRange(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => EXIT_INPUT,
                ErrorClass::Stretch => EXIT_STRETCH,
                ErrorClass::Budget => EXIT_BUDGET,
                ErrorClass::Internal => EXIT_INTERNAL,
            },
            CliError::Io { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::InRange(_) => EXIT_VERIFY,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => "input",
                ErrorClass::Stretch => "stretch",
                ErrorClass::Budget => "budget",
                ErrorClass::Internal => "internal",
            },
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
            CliError::InRange(_) => "verify",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::InRange(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Runs one parsed command, filling `report` as it goes.
pub fn run(cli: &Cli, report: &mut Report) -> Result<(), CliError> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {w} workers: {e}")))?;
        report.push("workers", w);
    }
    commands::dispatch(&cli.command, report)
}

/// Runs a command and returns its exit code, with the report (and the error,
/// if any) already recorded in `report`.
pub fn execute(cli: &Cli, report: &mut Report) -> i32 {
    match run(cli, report) {
        Ok(()) => {
            report.push("status", "ok");
            EXIT_OK
        }
        Err(e) => {
            let code = e.exit_code();
            report.push("status", "error");
            report.push("error_kind", e.kind());
            report.push("error", e.to_string());
            report.push("exit", code);
            code
        }
    }
}
