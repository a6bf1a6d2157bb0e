use std::process::ExitCode;

use clap::Parser;
use rangeavoid_cli::{execute, Cli, Report, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let name = std::env::args().nth(1).unwrap_or_default();
    let mut report = Report::new(&name);
    let code = execute(&cli, &mut report);
    eprint!("{report}");
    ExitCode::from(code as u8)
}
