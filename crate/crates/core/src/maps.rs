//! Birational maps between the Fermat cubic `F₃: x³ + y³ = 1` and its
//! Weierstrass forms, and the uniformizations `C/Λ → F₃` they induce.
//!
//! ```text
//! F₃ --Φ--> E3: y² = 4x³ − 8          Φ(x, y)  = (2/(y+x), √24·(y−x)/(y+x))
//! E3 --Φ⁻¹--> F₃                      Φ⁻¹(x, y) = (1/x − y/(√24·x), 1/x + y/(√24·x))
//! E3': y² = 4x³ − 1 --Φ̄--> F₃         Φ̄(x, y)  = Φ⁻¹(2x, √8·y)
//!                                              = ((1 − y/√3)/(2x), (1 + y/√3)/(2x))
//! ```
//!
//! Composing with `z ↦ (℘(z), ℘'(z))` gives the two uniformizations
//! [`uniformize_g3_8`] and [`uniformize_baker`]; precomposing those with an
//! entire function gives the general meromorphic solutions of `f³ + g³ = 1`.

use alloc::format;
use core::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::expr::Expr;
use crate::lattice::{hexagonal_lattice_with_radius, Lattice};
use crate::normal_forms;
use crate::weierstrass::{wp_pair, wp_zeros, WpValue};
use crate::{Error, Result};

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;
/// `√8 = 2√2`.
pub const SQRT_8: f64 = 2.828_427_124_746_190_3;
/// `√24 = 2√6`.
pub const SQRT_24: f64 = 4.898_979_485_566_356;

/// Default relative residual accepted when validating that an input point lies
/// on its curve.
pub const DEFAULT_MEMBERSHIP_TOLERANCE: f64 = 1e-6;

/// `|℘(z)|` below this is treated as a zero of `℘`, i.e. a pole of `(f, g)`.
pub const WP_ZERO_THRESHOLD: f64 = 1e-8;

/// The curve an [`AffinePoint`] claims to lie on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveTag {
    /// `xⁿ + yⁿ = 1`.
    Fermat(u32),
    /// `2x³ + 6xy² = 1`.
    E1,
    /// The degree-`n` normal form `e2(y) = xⁿ`. `root_index` selects
    /// `ω = exp(iπ(2k+1)/n)` for even `n` and is `None` for odd `n`.
    E2 { n: u32, root_index: Option<u32> },
    /// `y² = 4x³ − 8`.
    E3,
    /// `y² = 4x³ − 1`.
    E3Prime,
    /// `y² = 4x³ − g2·x − g3`.
    Weierstrass { g2: Complex64, g3: Complex64 },
}

impl CurveTag {
    /// The Weierstrass tag for `(g2, g3)`, using [`CurveTag::E3`] and
    /// [`CurveTag::E3Prime`] for the two named curves.
    pub fn weierstrass(g2: Complex64, g3: Complex64) -> Self {
        if g2.is_zero() && g3 == Complex64::new(8.0, 0.0) {
            CurveTag::E3
        } else if g2.is_zero() && g3 == Complex64::new(1.0, 0.0) {
            CurveTag::E3Prime
        } else {
            CurveTag::Weierstrass { g2, g3 }
        }
    }

    pub fn degree(&self) -> u32 {
        match *self {
            CurveTag::Fermat(n) | CurveTag::E2 { n, .. } => n,
            _ => 3,
        }
    }
}

impl fmt::Display for CurveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveTag::Fermat(n) => write!(f, "F_{n}: x^{n} + y^{n} = 1"),
            CurveTag::E1 => f.write_str("E1: 2x^3 + 6xy^2 = 1"),
            CurveTag::E2 { n, root_index: None } => write!(f, "E2 (n = {n})"),
            CurveTag::E2 { n, root_index: Some(k) } => write!(f, "E2 (n = {n}, root index {k})"),
            CurveTag::E3 => f.write_str("E3: y^2 = 4x^3 - 8"),
            CurveTag::E3Prime => f.write_str("E3': y^2 = 4x^3 - 1"),
            CurveTag::Weierstrass { g2, g3 } => write!(f, "y^2 = 4x^3 - ({g2})x - ({g3})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinePoint {
    pub x: Complex64,
    pub y: Complex64,
    pub curve: CurveTag,
}

impl AffinePoint {
    pub fn new(x: Complex64, y: Complex64, curve: CurveTag) -> Self {
        AffinePoint { x, y, curve }
    }

    pub fn real(x: f64, y: f64, curve: CurveTag) -> Self {
        AffinePoint::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0), curve)
    }

    pub fn residual(&self) -> f64 {
        on_curve_residual(self)
    }
}

/// `|P(x, y)| / max(1, |x|^d, |y|^d)` where `P` is the tagged curve's defining
/// polynomial and `d` its degree.
pub fn on_curve_residual(p: &AffinePoint) -> f64 {
    let AffinePoint { x, y, curve } = *p;
    let d = curve.degree() as i32;
    let value = match curve {
        CurveTag::Fermat(n) => x.powi(n as i32) + y.powi(n as i32) - 1.0,
        CurveTag::E1 => 2.0 * x * x * x + 6.0 * x * y * y - 1.0,
        CurveTag::E2 { n, root_index } => {
            let coeffs = match normal_forms::e2_numeric(n, root_index) {
                Ok(c) => c,
                Err(_) => return f64::INFINITY,
            };
            horner(&coeffs, y) - x.powi(n as i32)
        }
        CurveTag::E3 => y * y - 4.0 * x * x * x + 8.0,
        CurveTag::E3Prime => y * y - 4.0 * x * x * x + 1.0,
        CurveTag::Weierstrass { g2, g3 } => y * y - 4.0 * x * x * x + g2 * x + g3,
    };
    let scale = 1f64.max(libm::pow(x.norm(), d as f64)).max(libm::pow(y.norm(), d as f64));
    value.norm() / scale
}

pub(crate) fn horner(coeffs: &[Complex64], y: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * y + c)
}

/// Checks the tag and the residual of `p` against `expected`.
pub fn ensure_on_curve(p: &AffinePoint, expected: CurveTag, tolerance: f64) -> Result<()> {
    if p.curve != expected {
        return Err(Error::OffCurve {
            curve: format!("{expected} (point is tagged {})", p.curve),
            residual: f64::INFINITY,
            tolerance,
        });
    }
    let residual = on_curve_residual(p);
    if residual.is_nan() || residual > tolerance {
        return Err(Error::OffCurve {
            curve: format!("{expected}"),
            residual,
            tolerance,
        });
    }
    Ok(())
}

/// Smallest denominator magnitude accepted before reporting a near-pole.
const DENOMINATOR_FLOOR: f64 = 1e-300;

/// `Φ: F₃ → E3`.
pub fn phi(p: &AffinePoint) -> Result<AffinePoint> {
    phi_checked(p, DEFAULT_MEMBERSHIP_TOLERANCE)
}

pub fn phi_checked(p: &AffinePoint, tolerance: f64) -> Result<AffinePoint> {
    ensure_on_curve(p, CurveTag::Fermat(3), tolerance)?;
    let s = p.x + p.y;
    // x + y = 0 forces 0 = 1 on F₃, so only rounding can get here.
    if s.norm() < DENOMINATOR_FLOOR {
        return Err(Error::Conditioning(s.norm()));
    }
    Ok(AffinePoint::new(
        2.0 / s,
        SQRT_24 * (p.y - p.x) / s,
        CurveTag::E3,
    ))
}

/// `Φ⁻¹: E3 → F₃`.
pub fn phi_inv(p: &AffinePoint) -> Result<AffinePoint> {
    phi_inv_checked(p, DEFAULT_MEMBERSHIP_TOLERANCE)
}

pub fn phi_inv_checked(p: &AffinePoint, tolerance: f64) -> Result<AffinePoint> {
    ensure_on_curve(p, CurveTag::E3, tolerance)?;
    if p.x.is_zero() {
        return Err(Error::AtInfinity("x = 0 maps to a point at infinity of F_3"));
    }
    let inv = p.x.inv();
    let t = p.y * inv / SQRT_24;
    Ok(AffinePoint::new(inv - t, inv + t, CurveTag::Fermat(3)))
}

/// `Φ̄: E3' → F₃`, `Φ̄(x, y) = Φ⁻¹(2x, √8·y)`.
pub fn phi_bar(p: &AffinePoint) -> Result<AffinePoint> {
    phi_bar_checked(p, DEFAULT_MEMBERSHIP_TOLERANCE)
}

pub fn phi_bar_checked(p: &AffinePoint, tolerance: f64) -> Result<AffinePoint> {
    ensure_on_curve(p, CurveTag::E3Prime, tolerance)?;
    if p.x.is_zero() {
        return Err(Error::AtInfinity("x = 0 maps to a point at infinity of F_3"));
    }
    let half = (2.0 * p.x).inv();
    let t = p.y / SQRT_3;
    Ok(AffinePoint::new(
        half * (1.0 - t),
        half * (1.0 + t),
        CurveTag::Fermat(3),
    ))
}

/// Values `(f(z), g(z))` of a meromorphic solution of `f³ + g³ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionPair {
    pub f_value: Complex64,
    pub g_value: Complex64,
}

impl SolutionPair {
    /// `|f³ + g³ − 1|`.
    pub fn cube_residual(&self) -> f64 {
        let (f, g) = (self.f_value, self.g_value);
        (f * f * f + g * g * g - 1.0).norm()
    }

    pub fn as_point(&self) -> AffinePoint {
        AffinePoint::new(self.f_value, self.g_value, CurveTag::Fermat(3))
    }
}

/// Which normalization of the Weierstrass cubic drives the uniformization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `(g2, g3) = (0, 1)`: `f = (1 − ℘'/√3) / (2℘)`, `g = (1 + ℘'/√3) / (2℘)`.
    Baker,
    /// `(g2, g3) = (0, 8)`: `f = (1 − ℘'/√24) / ℘`, `g = (1 + ℘'/√24) / ℘`.
    G3Eight,
}

impl Variant {
    pub fn g3(self) -> f64 {
        match self {
            Variant::Baker => 1.0,
            Variant::G3Eight => 8.0,
        }
    }

    pub fn from_g3(g3: u32) -> Option<Self> {
        match g3 {
            1 => Some(Variant::Baker),
            8 => Some(Variant::G3Eight),
            _ => None,
        }
    }

    /// The hexagonal lattice with invariants `(0, g3)` for this variant.
    pub fn lattice(self, radius: u32) -> Result<Lattice> {
        hexagonal_lattice_with_radius(self.g3(), radius)
    }

    pub fn uniformize(self, z: Complex64, lattice: &Lattice) -> Result<SolutionPair> {
        match self {
            Variant::Baker => uniformize_baker(z, lattice),
            Variant::G3Eight => uniformize_g3_8(z, lattice),
        }
    }

    /// The solution pair from precomputed `℘(z)`, `℘'(z)` on this variant's
    /// lattice. `z` is only used to label a [`Error::SolutionPole`].
    pub fn from_wp(self, z: Complex64, value: WpValue) -> Result<SolutionPair> {
        let WpValue { p, p_prime } = value;
        if p.norm() < WP_ZERO_THRESHOLD {
            return Err(Error::SolutionPole { z, value: p });
        }
        Ok(match self {
            Variant::Baker => {
                let half = (2.0 * p).inv();
                let t = p_prime / SQRT_3;
                SolutionPair {
                    f_value: half * (1.0 - t),
                    g_value: half * (1.0 + t),
                }
            }
            Variant::G3Eight => {
                let inv = p.inv();
                let t = p_prime * inv / SQRT_24;
                SolutionPair {
                    f_value: inv - t,
                    g_value: inv + t,
                }
            }
        })
    }

    /// The Weierstrass-side map into `F₃`: `Φ̄` or `Φ⁻¹`.
    pub fn to_fermat(self, p: &AffinePoint) -> Result<AffinePoint> {
        match self {
            Variant::Baker => phi_bar(p),
            Variant::G3Eight => phi_inv(p),
        }
    }
}

fn require_invariants(lattice: &Lattice, g3: f64) -> Result<()> {
    let (lg2, lg3) = lattice.invariants();
    if lg2.norm() > 1e-12 || (lg3 - g3).norm() > 1e-12 * g3 {
        return Err(Error::Domain(format!(
            "lattice invariants ({lg2}, {lg3}) differ from (0, {g3})"
        )));
    }
    Ok(())
}

/// `Φ̄ ∘ Ψ'` on the lattice with `(g2, g3) = (0, 1)`.
pub fn uniformize_baker(z: Complex64, lattice: &Lattice) -> Result<SolutionPair> {
    require_invariants(lattice, 1.0)?;
    Variant::Baker.from_wp(z, wp_pair(z, lattice)?)
}

/// `Φ⁻¹ ∘ Ψ` on the lattice with `(g2, g3) = (0, 8)`.
pub fn uniformize_g3_8(z: Complex64, lattice: &Lattice) -> Result<SolutionPair> {
    require_invariants(lattice, 8.0)?;
    Variant::G3Eight.from_wp(z, wp_pair(z, lattice)?)
}

/// `(F, G) = uniformization ∘ α` evaluated at `z`.
pub fn solution_from_alpha(
    alpha: &Expr,
    z: Complex64,
    variant: Variant,
    lattice: &Lattice,
) -> Result<SolutionPair> {
    let w = alpha.eval(z)?;
    variant.uniformize(w, lattice)
}

/// Disks excluded from sampling: around every lattice point (poles of `℘`)
/// and around the two zeros of `℘` (poles of `f` and `g`), all of radius
/// `pole_exclusion · |ω₁|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionZones {
    radius: f64,
    zeros: [Complex64; 2],
}

impl ExclusionZones {
    pub fn new(lattice: &Lattice) -> Result<Self> {
        Ok(ExclusionZones {
            radius: lattice.exclusion_radius(),
            zeros: wp_zeros(lattice)?,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn zeros(&self) -> [Complex64; 2] {
        self.zeros
    }

    /// Whether `z` falls in one of the excluded disks.
    pub fn contains(&self, lattice: &Lattice, z: Complex64) -> bool {
        let (_, r) = lattice.reduce_centered(z);
        if r.norm() < self.radius {
            return true;
        }
        self.zeros.iter().any(|&z0| {
            let (_, d) = lattice.reduce_centered(z - z0);
            d.norm() < self.radius
        })
    }
}

/// `√8 / (2√24) = 1/(2√3)` holds bit-for-bit with the principal roots above,
/// so `Φ̄` may use the simplified constant.
pub fn branch_constants_consistent() -> bool {
    SQRT_8 / (2.0 * SQRT_24) == 1.0 / (2.0 * SQRT_3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_identity_holds_exactly() {
        assert!(branch_constants_consistent());
        assert_eq!(SQRT_24, libm::sqrt(24.0));
        assert_eq!(SQRT_8, libm::sqrt(8.0));
        assert_eq!(SQRT_3, libm::sqrt(3.0));
    }

    #[test]
    fn phi_of_unit_points() {
        let a = phi(&AffinePoint::real(1.0, 0.0, CurveTag::Fermat(3))).unwrap();
        assert_eq!(a.x, Complex64::new(2.0, 0.0));
        assert_eq!(a.y, Complex64::new(-SQRT_24, 0.0));
        assert_eq!(a.curve, CurveTag::E3);
        assert!(on_curve_residual(&a) < 1e-14);

        let b = phi(&AffinePoint::real(0.0, 1.0, CurveTag::Fermat(3))).unwrap();
        assert_eq!(b.y, Complex64::new(SQRT_24, 0.0));
    }

    #[test]
    fn phi_inv_of_unit_images() {
        let p = phi_inv(&AffinePoint::real(2.0, -SQRT_24, CurveTag::E3)).unwrap();
        assert!((p.x - 1.0).norm() < 1e-15 && p.y.norm() < 1e-15);
        let q = phi_inv(&AffinePoint::real(2.0, SQRT_24, CurveTag::E3)).unwrap();
        assert!(q.x.norm() < 1e-15 && (q.y - 1.0).norm() < 1e-15);
    }

    #[test]
    fn off_curve_and_wrong_tag_are_rejected() {
        let bad = AffinePoint::real(1.0, 1.0, CurveTag::Fermat(3));
        assert_eq!(on_curve_residual(&bad), 1.0);
        assert!(matches!(phi(&bad), Err(Error::OffCurve { .. })));
        let tagged_wrong = AffinePoint::real(2.0, -SQRT_24, CurveTag::E3Prime);
        assert!(matches!(phi_inv(&tagged_wrong), Err(Error::OffCurve { .. })));
    }

    #[test]
    fn phi_inv_at_x_zero_is_a_point_at_infinity() {
        // (0, ±i√8) lies on E3.
        let p = AffinePoint::new(Complex64::zero(), Complex64::new(0.0, SQRT_8), CurveTag::E3);
        assert!(on_curve_residual(&p) < 1e-15);
        assert!(matches!(phi_inv(&p), Err(Error::AtInfinity(_))));
    }

    #[test]
    fn phi_bar_at_the_real_root() {
        let x = libm::cbrt(0.25);
        let p = phi_bar(&AffinePoint::real(x, 0.0, CurveTag::E3Prime)).unwrap();
        let want = 1.0 / (2.0 * x);
        assert!((p.x - want).norm() < 1e-15 && (p.y - want).norm() < 1e-15);
        assert!(on_curve_residual(&p) < 1e-15);
    }

    #[test]
    fn residual_examples() {
        assert_eq!(on_curve_residual(&AffinePoint::real(1.0, 0.0, CurveTag::Fermat(3))), 0.0);
        let e1 = AffinePoint::real(libm::cbrt(0.5), 0.0, CurveTag::E1);
        assert!(on_curve_residual(&e1) < 1e-15);
    }

    #[test]
    fn wrong_lattice_is_rejected() {
        let l = hexagonal_lattice_with_radius(8.0, 5).unwrap();
        assert!(matches!(
            uniformize_baker(Complex64::new(0.3, 0.1), &l),
            Err(Error::Domain(_))
        ));
    }
}
