use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use facdecomp::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout
                .write_all(outcome.stdout.as_bytes())
                .and_then(|_| stdout.flush());
            eprint!("{}", outcome.stderr);
            match outcome.failure {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("{}", e.line());
                    ExitCode::from(e.exit as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("{}", e.line());
            ExitCode::from(e.exit as u8)
        }
    }
}
