//! `fermat verify`: the numerical invariant suite for one lattice variant.

use std::f64::consts::{PI, SQRT_2};

use fermat_core::lattice::{real_half_period, Lattice};
use fermat_core::maps::{
    branch_constants_consistent, AffinePoint, CurveTag, ExclusionZones, SolutionPair, Variant,
    SQRT_24, SQRT_3,
};
use fermat_core::weierstrass::{wp_pair, WpValue};
use num_complex::Complex64;
use serde_json::{json, Value};

use super::sample_cell;
use crate::config::{OutputFormat, RunConfig, RNG_DESCRIPTION};
use crate::numfmt::{csv_line, json_num, num, pretty};
use crate::{CliError, Outcome};

/// Samples used for the cross-variant scaling check.
pub const SCALING_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Passes when `value < threshold`.
    Below,
    /// Passes when `value > threshold`.
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub bound: Bound,
}

impl Check {
    pub fn passes(&self) -> bool {
        match self.bound {
            Bound::Below => self.value < self.threshold,
            Bound::Above => self.value > self.threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub variant: Variant,
    pub samples: usize,
    pub rejected_draws: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passes())
    }
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn pair_distance(a: &SolutionPair, f: Complex64, g: Complex64) -> f64 {
    relative(a.f_value, f).max(relative(a.g_value, g))
}

/// `|(f'(z), g'(z))|` from `℘'' = 6℘²` (requires `g2 = 0`).
fn derivative_norm(variant: Variant, v: WpValue) -> f64 {
    let (c, k) = match variant {
        Variant::Baker => (SQRT_3, 2.0),
        Variant::G3Eight => (SQRT_24, 1.0),
    };
    let (p, q) = (v.p, v.p_prime);
    let pp = 6.0 * p * p;
    let denom = k * p * p;
    let df = (-(pp / c) * p - (1.0 - q / c) * q) / denom;
    let dg = ((pp / c) * p - (1.0 + q / c) * q) / denom;
    (df.norm_sqr() + dg.norm_sqr()).sqrt()
}

fn gamma_half_period(g3: f64) -> f64 {
    libm::pow(libm::tgamma(1.0 / 3.0), 3.0) / (4.0 * PI) * libm::pow(g3, -1.0 / 6.0)
}

struct Maxima {
    ode: f64,
    cube: f64,
    composition: f64,
    swap: f64,
    scaling: f64,
    min_derivative: f64,
}

/// Runs the suite; sampling is deterministic in `config.seed`.
pub fn evaluate(config: &RunConfig, variant: Variant, samples: usize) -> Result<VerifyReport, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let radius = config.truncation_radius;
    let lattice = variant.lattice(radius)?;
    let other_variant = match variant {
        Variant::Baker => Variant::G3Eight,
        Variant::G3Eight => Variant::Baker,
    };
    let other = other_variant.lattice(radius)?;
    let zones = ExclusionZones::new(&lattice)?;
    let (g2, g3) = lattice.invariants();
    let tag = CurveTag::weierstrass(g2, g3);
    let mut rng = config.rng();

    let mut m = Maxima {
        ode: 0.0,
        cube: 0.0,
        composition: 0.0,
        swap: 0.0,
        scaling: 0.0,
        min_derivative: f64::INFINITY,
    };
    let mut rejected_draws = 0;
    for i in 0..samples {
        let (z, rejected) = sample_cell(&lattice, &zones, &mut rng);
        rejected_draws += rejected;

        let v = wp_pair(z, &lattice)?;
        m.ode = m.ode.max(v.ode_residual(g2, g3));
        let s = variant.from_wp(z, v)?;
        m.cube = m.cube.max(s.cube_residual());
        let composed = variant.to_fermat(&AffinePoint::new(v.p, v.p_prime, tag))?;
        m.composition = m.composition.max(pair_distance(&s, composed.x, composed.y));
        m.min_derivative = m.min_derivative.min(derivative_norm(variant, v));

        let mirrored = variant.from_wp(-z, wp_pair(-z, &lattice)?)?;
        m.swap = m.swap.max(pair_distance(&s, mirrored.g_value, mirrored.f_value));

        if i < SCALING_SAMPLES {
            // The g3 = 8 lattice is the g3 = 1 lattice shrunk by √2.
            let w = match variant {
                Variant::Baker => z / SQRT_2,
                Variant::G3Eight => z * SQRT_2,
            };
            let t = other_variant.uniformize(w, &other)?;
            m.scaling = m.scaling.max(pair_distance(&s, t.f_value, t.g_value));
        }
    }

    Ok(VerifyReport {
        variant,
        samples,
        rejected_draws,
        checks: build_checks(config, variant, &lattice, &m)?,
    })
}

fn build_checks(
    config: &RunConfig,
    variant: Variant,
    lattice: &Lattice,
    m: &Maxima,
) -> Result<Vec<Check>, CliError> {
    let g3 = variant.g3();
    let tol = config.tolerance;
    let (eg2, eg3) = lattice.eisenstein_invariants();
    let half_period = real_half_period(g3)?;
    let at_half = variant.uniformize(lattice.omega1() / 2.0, lattice)?;
    let expected = Complex64::new(libm::cbrt(0.5), 0.0);
    let below = |name, value, threshold| Check {
        name,
        value,
        threshold,
        bound: Bound::Below,
    };
    Ok(vec![
        below(
            "branch_constants",
            if branch_constants_consistent() { 0.0 } else { 1.0 },
            0.5,
        ),
        below(
            "half_period_quadrature",
            (half_period - gamma_half_period(g3)).abs(),
            1e-10,
        ),
        below("eisenstein_g2", eg2.norm(), 1e-8),
        below("eisenstein_g3_relative", (eg3 - g3).norm() / g3, 1e-8),
        below(
            "half_period_value",
            (at_half.f_value - expected).norm().max((at_half.g_value - expected).norm()),
            1e-10,
        ),
        below("ode_residual", m.ode, tol),
        below("cube_residual", m.cube, tol),
        below("composition", m.composition, 1e-12),
        below("swap_symmetry", m.swap, 1e-10),
        below("variant_scaling", m.scaling, tol),
        Check {
            name: "local_injectivity",
            value: m.min_derivative,
            threshold: 1e-6,
            bound: Bound::Above,
        },
    ])
}

fn variant_label(v: Variant) -> &'static str {
    match v {
        Variant::Baker => "(g2, g3) = (0, 1)",
        Variant::G3Eight => "(g2, g3) = (0, 8)",
    }
}

pub fn render(config: &RunConfig, report: &VerifyReport) -> String {
    match config.format {
        OutputFormat::Csv => {
            let mut out = String::from("invariant,value,threshold,bound,pass\n");
            for c in &report.checks {
                out.push_str(&csv_line(&[
                    c.name.to_string(),
                    num(c.value),
                    num(c.threshold),
                    match c.bound {
                        Bound::Below => "below".into(),
                        Bound::Above => "above".into(),
                    },
                    c.passes().to_string(),
                ]));
            }
            out
        }
        OutputFormat::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "value": json_num(c.value),
                        "threshold": json_num(c.threshold),
                        "bound": match c.bound { Bound::Below => "below", Bound::Above => "above" },
                        "pass": c.passes(),
                    })
                })
                .collect();
            pretty(&json!({
                "command": "verify",
                "lattice": variant_label(report.variant),
                "g3": json_num(report.variant.g3()),
                "seed": config.seed,
                "rng": RNG_DESCRIPTION,
                "samples": report.samples,
                "tolerance": json_num(config.tolerance),
                "truncation_radius": config.truncation_radius,
                "checks": checks,
                "passed": report.first_failure().is_none(),
                "first_failure": report.first_failure().map(|c| c.name),
            }))
        }
    }
}

pub fn run(config: &RunConfig, variant: Variant, samples: usize) -> Result<Outcome, CliError> {
    let report = evaluate(config, variant, samples)?;
    let mut outcome = Outcome::text(render(config, &report));
    outcome.diagnostics.push(format!(
        "verify {}: {} samples, {} draws rejected in exclusion disks",
        variant_label(variant),
        samples,
        report.rejected_draws
    ));
    outcome.failure = report.first_failure().map(|c| {
        format!(
            "invariant `{}` failed: {} is not {} {}",
            c.name,
            num(c.value),
            match c.bound {
                Bound::Below => "below",
                Bound::Above => "above",
            },
            num(c.threshold)
        )
    });
    Ok(outcome)
}
