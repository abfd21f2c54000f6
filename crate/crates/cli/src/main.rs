use std::io::Write;
use std::process::ExitCode;

use beatty_cli::commands::execute;
use beatty_cli::config::Cli;
use beatty_cli::CliError;
use clap::error::ErrorKind;
use clap::Parser;

fn write_output(body: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = execute(&cli.command).and_then(|r| {
        write_output(&r.body, r.out.as_deref())?;
        if r.failed {
            Err(CliError::Verification)
        } else {
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("beatty: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
