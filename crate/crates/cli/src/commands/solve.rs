use fermat_core::expr::Expr;
use fermat_core::maps::{ExclusionZones, Variant};
use fermat_core::Error;
use num_complex::Complex64;

use super::{render_table, Cell};
use crate::config::RunConfig;
use crate::numfmt::num;
use crate::{CliError, Outcome};

pub const COLUMNS: [&str; 10] = [
    "re_z", "im_z", "re_alpha", "im_alpha", "re_f", "im_f", "re_g", "im_g", "residual", "status",
];

/// One evaluated row: `status` is `ok`, `pole`, `solution-pole` or `overflow`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveRow {
    pub z: Complex64,
    pub alpha: Option<Complex64>,
    pub f: Option<Complex64>,
    pub g: Option<Complex64>,
    pub residual: Option<f64>,
    pub status: &'static str,
}

pub fn evaluate(
    config: &RunConfig,
    variant: Variant,
    alpha_src: &str,
    points: &[Complex64],
) -> Result<Vec<SolveRow>, CliError> {
    let alpha = Expr::parse(alpha_src).map_err(|e| CliError::Usage(format!("--alpha: {e}")))?;
    let lattice = variant.lattice(config.truncation_radius)?;
    let zones = ExclusionZones::new(&lattice)?;
    Ok(points
        .iter()
        .map(|&z| {
            let mut row = SolveRow {
                z,
                alpha: None,
                f: None,
                g: None,
                residual: None,
                status: "ok",
            };
            let w = match alpha.eval(z) {
                Ok(w) => w,
                Err(_) => {
                    row.status = "overflow";
                    return row;
                }
            };
            row.alpha = Some(w);
            if zones.contains(&lattice, w) {
                row.status = "pole";
                return row;
            }
            match variant.uniformize(w, &lattice) {
                Ok(s) => {
                    row.f = Some(s.f_value);
                    row.g = Some(s.g_value);
                    row.residual = Some(s.cube_residual());
                }
                Err(Error::SolutionPole { .. }) => row.status = "solution-pole",
                Err(_) => row.status = "pole",
            }
            row
        })
        .collect())
}

fn cells(v: Option<Complex64>) -> [Cell; 2] {
    match v {
        Some(v) => [Cell::Num(v.re), Cell::Num(v.im)],
        None => [Cell::Empty, Cell::Empty],
    }
}

pub fn run(
    config: &RunConfig,
    variant: Variant,
    alpha_src: &str,
    points: &[Complex64],
) -> Result<Outcome, CliError> {
    let rows = evaluate(config, variant, alpha_src, points)?;
    let table: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| {
            let mut out = vec![Cell::Num(r.z.re), Cell::Num(r.z.im)];
            out.extend(cells(r.alpha));
            out.extend(cells(r.f));
            out.extend(cells(r.g));
            out.push(r.residual.map_or(Cell::Empty, Cell::Num));
            out.push(Cell::Text(r.status.to_string()));
            out
        })
        .collect();

    let mut outcome = Outcome::text(render_table(config.format, &COLUMNS, &table));
    let poles = rows.iter().filter(|r| r.status != "ok").count();
    if poles > 0 {
        outcome
            .diagnostics
            .push(format!("solve: {poles} of {} points hit a pole or overflowed", rows.len()));
    }
    if let Some(bad) = rows
        .iter()
        .find(|r| r.residual.is_some_and(|v| v.is_nan() || v >= config.tolerance))
    {
        outcome.failure = Some(format!(
            "cube residual {} at z = {} exceeds --tol {}",
            num(bad.residual.unwrap_or(f64::NAN)),
            bad.z,
            num(config.tolerance)
        ));
    }
    Ok(outcome)
}
