use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use quadloci_cli::args::Cli;
use quadloci_cli::commands::run;
use quadloci_cli::error::{CliError, EXIT_VIOLATION};

fn report(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code() as u8)
}

fn write_output(cli: &Cli, bytes: &[u8]) -> anyhow::Result<()> {
    match &cli.global.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => return report(&CliError::Usage(e.render().to_string().trim().to_string())),
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => return report(&e),
    };
    if let Err(e) = write_output(&cli, &out.bytes) {
        return report(&CliError::Io(std::io::Error::other(e.to_string())));
    }
    if out.violation {
        ExitCode::from(EXIT_VIOLATION as u8)
    } else {
        ExitCode::SUCCESS
    }
}
