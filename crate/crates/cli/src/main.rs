use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fermat_cli::{run, Cli, CliError};

fn emit(cli: &Cli, data: &[u8]) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, data).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(data)
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = run(&cli).and_then(|outcome| {
        emit(&cli, &outcome.data)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for line in &outcome.diagnostics {
                eprintln!("{line}");
            }
            if let Some(failure) = &outcome.failure {
                eprintln!("error: {failure}");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
