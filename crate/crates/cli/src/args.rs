use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermat_core::maps::Variant;
use num_complex::Complex64;

use crate::config::{OutputFormat, RunConfig};
use crate::grid::Grid;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "fermat",
    version,
    about = "Uniformization of the Fermat cubic by the Weierstrass p-function"
)]
pub struct Cli {
    /// Seed for the ChaCha8 sampling generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Tolerance for residual checks.
    #[arg(long = "tol", global = true, default_value_t = 1e-9)]
    pub tolerance: f64,

    /// Lattice truncation radius (square shells).
    #[arg(long, global = true, default_value_t = fermat_core::lattice::DEFAULT_TRUNCATION_RADIUS)]
    pub radius: u32,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Output file; stdout when absent (required for `plot`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        RunConfig {
            seed: self.seed,
            tolerance: self.tolerance,
            truncation_radius: self.radius,
            format: self.format,
            out: self.out.clone(),
        }
        .validate()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the lattice, p-function and map invariants on random samples.
    Verify(VerifyArgs),
    /// Print the degree-n normal form with its exact proof.
    NormalForm(NormalFormArgs),
    /// Tabulate f, g and the cube-sum residual on a grid.
    Uniformize(UniformizeArgs),
    /// Evaluate the solution built from an entire function alpha.
    Solve(SolveArgs),
    /// Describe a period lattice.
    Lattice(LatticeArgs),
    /// Write a PPM image of f, g or the residual.
    Plot(PlotArgs),
}

/// Accepts `1` and `8`, the two supported values of `g3`.
pub fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse::<u32>()
        .ok()
        .and_then(Variant::from_g3)
        .ok_or_else(|| format!("unsupported g3 `{s}`; choose 1 or 8"))
}

/// Complex literals such as `0.7+0.2i`, `-1e-3-2i`, `i`, `3`, or any constant
/// expression accepted by the `--alpha` grammar (`0.7+0.2*i`).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(z) = literal(&t) {
        return Ok(z);
    }
    fermat_core::expr::parse_constant(&t).map_err(|e| format!("`{s}` is not a complex number: {e}"))
}

fn literal(t: &str) -> Option<Complex64> {
    let bytes = t.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |part: &str| -> Option<f64> {
        let body = part.strip_suffix('i')?;
        let body = body.strip_suffix('*').unwrap_or(body);
        match body {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => body.parse().ok(),
        }
    };
    let value = match split {
        Some(k) if t.ends_with('i') => Complex64::new(t[..k].parse().ok()?, imag(&t[k..])?),
        _ if t.ends_with('i') => Complex64::new(0.0, imag(t)?),
        _ => Complex64::new(t.parse().ok()?, 0.0),
    };
    value.is_finite().then_some(value)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Lattice variant: 1 for (g2, g3) = (0, 1) or 8 for (0, 8).
    #[arg(long, value_parser = parse_variant, default_value = "1")]
    pub g3: Variant,

    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct NormalFormArgs {
    /// Degree of the Fermat curve, at least 3.
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct UniformizeArgs {
    #[arg(long, value_parser = parse_variant, default_value = "1")]
    pub g3: Variant,

    /// `re0,re1,im0,im1,steps`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Entire function of z, e.g. `z^2+0.3*i` or `exp(z)`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,

    /// Evaluation point; repeat for several.
    #[arg(long, required = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub at: Vec<Complex64>,

    #[arg(long, value_parser = parse_variant, default_value = "1")]
    pub g3: Variant,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Hexagonal lattice with invariants (0, g3); ignored when generators are given.
    #[arg(long, default_value_t = 1.0)]
    pub g3: f64,

    /// First generator of a general lattice.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, requires = "omega2")]
    pub omega1: Option<Complex64>,

    /// Second generator of a general lattice.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, requires = "omega1")]
    pub omega2: Option<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotTarget {
    F,
    G,
    Residual,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, value_enum)]
    pub what: PlotTarget,

    /// `re0,re1,im0,im1,steps`; the image is `steps × steps` pixels.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Grid,

    #[arg(long, value_parser = parse_variant, default_value = "1")]
    pub g3: Variant,
}
