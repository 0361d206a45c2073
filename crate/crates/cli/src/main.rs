//! `qrook`: batch frontend for the q-rook library.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status: 0 success,
//! 1 usage or input error, 2 budget exceeded, 3 a theorem-level identity failed.

mod commands;
mod input;
mod render;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use commands::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match commands::run(cli) {
        Ok(out) => {
            print!("{out}");
            if out.is_empty() || !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = commands::exit_code(&e);
            if code == 3 {
                eprintln!("INTERNAL IDENTITY FAILURE: {e}");
                eprintln!("A proven relation did not hold. This is a bug (or a mathematical discovery).");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
