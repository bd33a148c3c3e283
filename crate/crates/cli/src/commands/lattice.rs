use fermat_core::lattice::{hexagonal_lattice_with_radius, Lattice};
use fermat_core::weierstrass::wp_zeros;
use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::args::LatticeArgs;
use crate::config::{OutputFormat, RunConfig};
use crate::numfmt::{csv_line, json_complex, num, pretty};
use crate::{CliError, Outcome};

pub fn describe(lattice: &Lattice) -> Vec<(&'static str, Complex64)> {
    let (g2, g3) = lattice.invariants();
    let (eg2, eg3) = lattice.eisenstein_invariants();
    let real = |v: f64| Complex64::new(v, 0.0);
    let mut rows = vec![
        ("omega1", lattice.omega1()),
        ("omega2", lattice.omega2()),
        ("tau", lattice.omega2() / lattice.omega1()),
        ("g2", g2),
        ("g3", g3),
        ("eisenstein_g2", eg2),
        ("eisenstein_g3", eg3),
        ("discriminant", lattice.discriminant()),
        ("cell_area", real(lattice.cell_area())),
        ("truncation_radius", real(lattice.truncation_radius() as f64)),
        ("exclusion_radius", real(lattice.exclusion_radius())),
    ];
    if let Ok([z0, _]) = wp_zeros(lattice) {
        rows.push(("wp_zero", z0));
    }
    rows
}

pub fn run(config: &RunConfig, args: &LatticeArgs) -> Result<Outcome, CliError> {
    let radius = config.truncation_radius;
    let lattice = match (args.omega1, args.omega2) {
        (Some(a), Some(b)) => Lattice::with_radius(a, b, radius)?,
        _ => {
            if !(args.g3 > 0.0 && args.g3.is_finite()) {
                return Err(CliError::Usage(format!("--g3 must be positive, got {}", args.g3)));
            }
            hexagonal_lattice_with_radius(args.g3, radius)?
        }
    };
    let rows = describe(&lattice);
    let text = match config.format {
        OutputFormat::Csv => {
            let mut out = String::from("quantity,re,im\n");
            for (name, v) in &rows {
                out.push_str(&csv_line(&[name.to_string(), num(v.re), num(v.im)]));
            }
            out
        }
        OutputFormat::Json => {
            let mut map = Map::new();
            for (name, v) in &rows {
                map.insert(name.to_string(), json_complex(*v));
            }
            pretty(&Value::Object(map))
        }
    };
    Ok(Outcome::text(text))
}
