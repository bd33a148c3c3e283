//! `fermat normal-form`: the degree-`n` normal form, its maps and the exact proof.

use fermat_core::normal_forms::{verify_identity, Parity, ProofReport};
use fermat_core::ring::RingPoly;
use serde_json::{json, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::numfmt::{json_integer, pretty};
use crate::{CliError, Outcome};

/// `2 + 6y^2 = x^3`.
pub fn equation(report: &ProofReport) -> String {
    format!("{} = x^{}", report.rhs, report.n)
}

fn formulas(n: u32, parity: Parity) -> [String; 2] {
    match parity {
        Parity::Odd => [
            "Phi: (x, y) -> (2/(y+x), (y-x)/(y+x))".into(),
            "Phi^-1: (x, y) -> ((1-y)/x, (1+y)/x)".into(),
        ],
        Parity::Even => [
            format!("Phi: (x, y) -> ((t-1)/(t*y-x), (x-y)/(t*y-x)), t^{n} = -1"),
            "Phi^-1: (x, y) -> ((1+t*y)/x, (1+y)/x)".into(),
        ],
    }
}

fn expansion(n: u32, parity: Parity) -> String {
    match parity {
        Parity::Odd => format!("(1-y)^{n} + (1+y)^{n}"),
        Parity::Even => format!("(1+t*y)^{n} + (1+y)^{n}"),
    }
}

/// Odd degree: one integer per power of `y`. Even degree: per power of `y`,
/// the `n` integer coefficients of `1, t, …, t^(n−1)`.
fn coefficients_json(poly: &RingPoly, n: u32) -> Value {
    let coeffs = poly.coefficients().iter().map(|r| match poly.modulus() {
        None => json_integer(&r.coeff(0).to_string()),
        Some(_) => Value::Array(
            r.to_vec(n as usize)
                .iter()
                .map(|c| json_integer(&c.to_string()))
                .collect(),
        ),
    });
    Value::Array(coeffs.collect())
}

pub fn render(config: &RunConfig, report: &ProofReport) -> String {
    let n = report.n;
    match config.format {
        OutputFormat::Json => pretty(&json!({
            "n": n,
            "parity": report.parity.as_str(),
            "ring": match report.parity {
                Parity::Odd => "Z".to_string(),
                Parity::Even => format!("Z[t]/(t^{n}+1)"),
            },
            "equation": equation(report),
            "identity_holds": report.identity_holds,
            "lhs_coeffs": coefficients_json(&report.lhs, n),
            "rhs_coeffs": coefficients_json(&report.rhs, n),
            "first_mismatch": report.first_mismatch,
        })),
        OutputFormat::Csv => {
            let [phi, phi_inv] = formulas(n, report.parity);
            let mut out = format!("n = {n} ({})\n", report.parity.as_str());
            if report.parity == Parity::Even {
                out.push_str(&format!("ring: Z[t]/(t^{n}+1), t a root of x^{n} = -1\n"));
            }
            out.push_str(&format!("E2: {}\n{phi}\n{phi_inv}\n", equation(report)));
            out.push_str(&format!(
                "proof: {} = {}\n",
                expansion(n, report.parity),
                report.lhs
            ));
            if report.top_coefficient_vanishes == Some(true) {
                out.push_str(&format!("y^{n} coefficient: 1 + t^{n} = 0\n"));
            }
            match report.first_mismatch {
                None => out.push_str("identity: equal\n"),
                Some(k) => out.push_str(&format!("identity: NOT equal (first mismatch at y^{k})\n")),
            }
            out
        }
    }
}

pub fn run(config: &RunConfig, n: u32) -> Result<Outcome, CliError> {
    if n < 3 {
        return Err(CliError::Usage(format!("--n must be at least 3, got {n}")));
    }
    let report = verify_identity(n)?;
    let mut outcome = Outcome::text(render(config, &report));
    if let Some(k) = report.first_mismatch {
        outcome.failure = Some(format!("normal-form identity for n = {n} fails at y^{k}"));
    }
    Ok(outcome)
}
