use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use cobord_cli::{execute, Cli};

fn main() -> ExitCode {
    // Usage errors exit 1 (clap's default of 2 is reserved for Unknown
    // verdicts); --help and --version stay successful.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
