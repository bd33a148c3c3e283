use fermat_core::maps::{ExclusionZones, Variant};

use super::{render_table, Cell};
use crate::config::RunConfig;
use crate::grid::Grid;
use crate::numfmt::num;
use crate::{CliError, Outcome};

pub const COLUMNS: [&str; 7] = ["re_z", "im_z", "re_f", "im_f", "re_g", "im_g", "residual"];

pub fn run(config: &RunConfig, variant: Variant, grid: &Grid) -> Result<Outcome, CliError> {
    let lattice = variant.lattice(config.truncation_radius)?;
    let zones = ExclusionZones::new(&lattice)?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut excluded = 0usize;
    let mut worst: Option<(f64, num_complex::Complex64)> = None;
    for z in grid.points() {
        if zones.contains(&lattice, z) {
            excluded += 1;
            continue;
        }
        let s = match variant.uniformize(z, &lattice) {
            Ok(s) => s,
            Err(_) => {
                excluded += 1;
                continue;
            }
        };
        let r = s.cube_residual();
        if worst.is_none_or(|(w, _)| r > w) {
            worst = Some((r, z));
        }
        rows.push(vec![
            Cell::Num(z.re),
            Cell::Num(z.im),
            Cell::Num(s.f_value.re),
            Cell::Num(s.f_value.im),
            Cell::Num(s.g_value.re),
            Cell::Num(s.g_value.im),
            Cell::Num(r),
        ]);
    }

    let mut outcome = Outcome::text(render_table(config.format, &COLUMNS, &rows));
    outcome.diagnostics.push(format!(
        "uniformize: {} of {} grid points excluded (pole disks)",
        excluded,
        grid.len()
    ));
    if let Some((r, z)) = worst {
        if r.is_nan() || r >= config.tolerance {
            outcome.failure = Some(format!(
                "cube residual {} at z = {} exceeds --tol {}",
                num(r),
                z,
                num(config.tolerance)
            ));
        }
    }
    Ok(outcome)
}
