//! Evaluation of the Weierstrass `℘` function and its derivative.
//!
//! `z` is first reduced to the representative `r` of smallest modulus, then
//!
//! ```text
//! ℘(r)  = 1/r² + Σ_{0<max(|m|,|n|)≤R} (1/(r+ω)² − 1/ω²) + Σ_{j≥1} (2j+1) r^{2j} T_{2j+2}
//! ℘'(r) = −2/r³ − 2 Σ_{0<max(|m|,|n|)≤R} 1/(r+ω)³      + Σ_{j≥1} 2j(2j+1) r^{2j−1} T_{2j+2}
//! ```
//!
//! where `T_p` is the lattice's exterior tail `Σ_{max(|m|,|n|)>R} ω^{-p}`. The
//! finite sums run shell by shell with `ω` and `−ω` paired.

use num_complex::Complex64;
use num_traits::Zero;

use crate::lattice::{for_half_shell, CompensatedSum, Lattice};
use crate::maps::{AffinePoint, CurveTag};
use crate::{Error, Result};

/// `℘(z)` and `℘'(z)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpValue {
    pub p: Complex64,
    pub p_prime: Complex64,
}

impl WpValue {
    /// `|℘'² − (4℘³ − g2℘ − g3)| / max(1, |℘|³)`.
    pub fn ode_residual(&self, g2: Complex64, g3: Complex64) -> f64 {
        let p = self.p;
        let lhs = self.p_prime * self.p_prime;
        let rhs = 4.0 * p * p * p - g2 * p - g3;
        (lhs - rhs).norm() / libm::pow(p.norm(), 3.0).max(1.0)
    }
}

/// Both `℘(z)` and `℘'(z)` from a single pass over the lattice.
pub fn wp_pair(z: Complex64, lattice: &Lattice) -> Result<WpValue> {
    if !z.is_finite() {
        return Err(Error::Domain("argument must be finite".into()));
    }
    let (nearest, r) = lattice.reduce_centered(z);
    if r.norm() < lattice.exclusion_radius() {
        return Err(Error::Pole { nearest });
    }
    Ok(reduced_pair(r, lattice))
}

/// Evaluates at an already reduced argument `r`, which must not be a lattice point.
fn reduced_pair(r: Complex64, lattice: &Lattice) -> WpValue {
    let omega1 = lattice.omega1();
    let omega2 = lattice.omega2();
    let mut value = CompensatedSum::default();
    let mut deriv = CompensatedSum::default();
    for k in 1..=lattice.truncation_radius() as i64 {
        let mut shell_p = Complex64::zero();
        let mut shell_d = Complex64::zero();
        for_half_shell(k, |m, n| {
            let w = omega1 * m as f64 + omega2 * n as f64;
            let a = (r + w).inv();
            let b = (r - w).inv();
            let c = w.inv();
            let (a2, b2) = (a * a, b * b);
            shell_p += a2 + b2 - 2.0 * c * c;
            shell_d += a2 * a + b2 * b;
        });
        value.add(shell_p);
        deriv.add(shell_d);
    }

    let inv = r.inv();
    let inv2 = inv * inv;
    let r2 = r * r;
    let mut tail_p = Complex64::zero();
    let mut tail_d = Complex64::zero();
    // r^{2j-1}, starting at j = 1.
    let mut odd_power = r;
    for (idx, t) in lattice.tails().iter().enumerate() {
        let j = (idx + 1) as f64;
        tail_d += 2.0 * j * (2.0 * j + 1.0) * odd_power * t;
        tail_p += (2.0 * j + 1.0) * odd_power * r * t;
        odd_power *= r2;
    }

    WpValue {
        p: inv2 + value.value() + tail_p,
        p_prime: -2.0 * inv2 * inv - 2.0 * deriv.value() + tail_d,
    }
}

pub fn wp(z: Complex64, lattice: &Lattice) -> Result<Complex64> {
    wp_pair(z, lattice).map(|v| v.p)
}

pub fn wp_prime(z: Complex64, lattice: &Lattice) -> Result<Complex64> {
    wp_pair(z, lattice).map(|v| v.p_prime)
}

/// `Ψ(z) = (℘(z), ℘'(z))`, a point of `y² = 4x³ − g2·x − g3`.
///
/// Lattice points map to the point at infinity and are reported as
/// [`Error::Pole`].
pub fn psi(z: Complex64, lattice: &Lattice) -> Result<AffinePoint> {
    let v = wp_pair(z, lattice)?;
    let (g2, g3) = lattice.invariants();
    Ok(AffinePoint::new(v.p, v.p_prime, CurveTag::weierstrass(g2, g3)))
}

pub fn ode_residual(z: Complex64, lattice: &Lattice) -> Result<f64> {
    let (g2, g3) = lattice.invariants();
    wp_pair(z, lattice).map(|v| v.ode_residual(g2, g3))
}

/// The two zeros `±z₀` of `℘` in a period cell, refined by Newton's method
/// from `±(ω₁ + ω₂)/3` (exact for the hexagonal lattices).
pub fn wp_zeros(lattice: &Lattice) -> Result<[Complex64; 2]> {
    let mut z = (lattice.omega1() + lattice.omega2()) / 3.0;
    for _ in 0..50 {
        let v = wp_pair(z, lattice)?;
        if v.p_prime.is_zero() {
            return Err(Error::Domain("Newton iteration hit a critical point of wp".into()));
        }
        let step = v.p / v.p_prime;
        z -= step;
        if step.norm() <= 1e-15 * lattice.omega1().norm() {
            break;
        }
    }
    Ok([z, -z])
}
