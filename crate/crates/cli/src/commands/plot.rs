use fermat_core::maps::Variant;

use crate::args::PlotTarget;
use crate::config::RunConfig;
use crate::grid::Grid;
use crate::ppm::{domain_color, encode, residual_gray, Rgb, WHITE};
use crate::{CliError, Outcome};

/// Pixel colours in image order; evaluation failures (poles) are white.
pub fn pixels(config: &RunConfig, variant: Variant, what: PlotTarget, grid: &Grid) -> Result<Vec<Rgb>, CliError> {
    let lattice = variant.lattice(config.truncation_radius)?;
    let mut out = Vec::with_capacity(grid.len());
    for row in 0..grid.steps {
        for col in 0..grid.steps {
            let z = grid.pixel(col, row);
            let px = match variant.uniformize(z, &lattice) {
                Err(_) => WHITE,
                Ok(s) => match what {
                    PlotTarget::F => domain_color(s.f_value),
                    PlotTarget::G => domain_color(s.g_value),
                    PlotTarget::Residual => residual_gray(s.cube_residual()),
                },
            };
            out.push(px);
        }
    }
    Ok(out)
}

pub fn run(config: &RunConfig, variant: Variant, what: PlotTarget, grid: &Grid) -> Result<Outcome, CliError> {
    if config.out.is_none() {
        return Err(CliError::Usage("plot writes a binary image and needs --out <path>".into()));
    }
    let px = pixels(config, variant, what, grid)?;
    let poles = px.iter().filter(|&&p| p == WHITE).count();
    Ok(Outcome {
        data: encode(grid.steps, grid.steps, &px),
        diagnostics: vec![format!("plot: {}x{} pixels, {poles} white", grid.steps, grid.steps)],
        failure: None,
    })
}
