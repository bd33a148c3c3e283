//! Command-line front end for `fermat-core`.
//!
//! Every command is a function from a [`RunConfig`] and its own arguments to
//! an [`Outcome`]: the bytes of the data file, diagnostics for stderr, and an
//! optional failed check. The binary only does argument parsing and IO.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod grid;
pub mod numfmt;
pub mod ppm;

pub use args::{Cli, Command};
pub use config::{OutputFormat, RunConfig, RNG_DESCRIPTION};
pub use error::CliError;

/// Result of running one command.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    /// Report, table or image bytes destined for `--out` or stdout.
    pub data: Vec<u8>,
    /// Lines for the diagnostics stream.
    pub diagnostics: Vec<String>,
    /// The first failed check, when any.
    pub failure: Option<String>,
}

impl Outcome {
    pub fn text(data: String) -> Self {
        Outcome {
            data: data.into_bytes(),
            ..Outcome::default()
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.failure.is_some() {
            1
        } else {
            0
        }
    }
}

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let config = cli.config()?;
    match &cli.command {
        Command::Verify(a) => commands::verify::run(&config, a.g3, a.samples),
        Command::NormalForm(a) => commands::normal_form::run(&config, a.n),
        Command::Uniformize(a) => commands::uniformize::run(&config, a.g3, &a.grid),
        Command::Solve(a) => commands::solve::run(&config, a.g3, &a.alpha, &a.at),
        Command::Lattice(a) => commands::lattice::run(&config, a),
        Command::Plot(a) => commands::plot::run(&config, a.g3, a.what, &a.grid),
    }
}
