use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hypermoment_cli::args::Cli;
use hypermoment_cli::{exit_code, render, run, EXIT_OK, EXIT_VERIFY};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, format)) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(render(&report, format).as_bytes());
            ExitCode::from(if report.consistent() { EXIT_OK } else { EXIT_VERIFY })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
