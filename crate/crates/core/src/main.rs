use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use diaglab::cli::{execute, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome = execute(&cli);
    let mut stdout = std::io::stdout().lock();
    if writeln!(stdout, "{}", outcome.report.to_json()).is_err() {
        return ExitCode::from(outcome.report.exit_code as u8);
    }
    if let Some(error) = &outcome.report.error {
        eprintln!("error: {error}");
    }
    if let Some((path, csv)) = outcome.csv {
        if let Err(err) = std::fs::write(&path, csv) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    ExitCode::from(outcome.report.exit_code as u8)
}
