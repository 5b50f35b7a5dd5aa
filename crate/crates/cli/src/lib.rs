//! Command-line front end: argument parsing, reports and the verification suite.

pub mod args;
pub mod commands;
pub mod report;
pub mod verify;

use hypermoment_core::Error;

use args::{Cli, Command, Format};
use report::Report;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARAMETER: u8 = 2;
pub const EXIT_DIVERGENT: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DivergentSeries(_) | Error::TermLimit(_) => EXIT_DIVERGENT,
        _ => EXIT_PARAMETER,
    }
}

pub fn run(cli: &Cli) -> Result<(Report, Format), Error> {
    let (report, args) = match &cli.command {
        Command::Moments(a) => (commands::moments(a)?, a),
        Command::Poly(a) => (commands::poly(a)?, a),
        Command::Sigma(a) => (commands::sigma(a)?, a),
        Command::Stieltjes(a) => (commands::stieltjes(a)?, a),
        Command::Egf(a) => (commands::egf(a)?, a),
        Command::Ortho(a) => (commands::ortho(a)?, a),
        Command::Verify(a) => (verify::verify(a)?, a),
    };
    Ok((report, args.format))
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.json(),
        Format::Csv => report.csv(),
        Format::Text => report.text(),
    }
}
