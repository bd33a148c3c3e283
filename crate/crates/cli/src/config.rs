use std::path::PathBuf;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// The sampling generator is part of the output contract: changing it changes
/// every seeded report.
pub const RNG_DESCRIPTION: &str = "ChaCha8Rng (rand_chacha 0.3), seed_from_u64(seed)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerance: f64,
    pub truncation_radius: u32,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            tolerance: 1e-9,
            truncation_radius: fermat_core::lattice::DEFAULT_TRUNCATION_RADIUS,
            format: OutputFormat::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(self) -> Result<Self, CliError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tol must be a positive finite number, got {}",
                self.tolerance
            )));
        }
        if self.truncation_radius == 0 {
            return Err(CliError::Usage("--radius must be at least 1".into()));
        }
        Ok(self)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}
