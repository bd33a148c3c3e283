pub mod lattice;
pub mod normal_form;
pub mod plot;
pub mod solve;
pub mod uniformize;
pub mod verify;

use fermat_core::lattice::Lattice;
use fermat_core::maps::ExclusionZones;
use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Value};

use crate::config::OutputFormat;
use crate::numfmt::{csv_line, json_num, num, pretty};

/// Draws `z = u·ω₁ + v·ω₂` with `u, v` uniform in `[0, 1)`, redrawing inside
/// the exclusion disks. Returns the point and the number of rejected draws.
pub fn sample_cell<R: Rng + ?Sized>(
    lattice: &Lattice,
    zones: &ExclusionZones,
    rng: &mut R,
) -> (Complex64, usize) {
    let mut rejected = 0;
    loop {
        let u: f64 = rng.gen();
        let v: f64 = rng.gen();
        let z = lattice.omega1() * u + lattice.omega2() * v;
        if !zones.contains(lattice, z) {
            return (z, rejected);
        }
        rejected += 1;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => num(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json_num(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// CSV with a header line, or `{"columns": [...], "rows": [[...], ...]}`.
pub fn render_table(format: OutputFormat, columns: &[&str], rows: &[Vec<Cell>]) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = csv_line(&columns.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            for row in rows {
                out.push_str(&csv_line(&row.iter().map(Cell::csv).collect::<Vec<_>>()));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                .collect();
            pretty(&json!({ "columns": columns, "rows": rows }))
        }
    }
}
