//! Period lattices `Λ = Z·ω₁ + Z·ω₂`.
//!
//! A [`Lattice`] carries its generators, the truncation radius used by every
//! lattice sum, the cached invariants `(g2, g3)` of its Weierstrass cubic, and
//! the tails `Σ ω^{-p}` over the lattice points outside the truncation
//! parallelogram `max(|m|, |n|) ≤ R`. The tails let truncated sums for `℘` be
//! completed to full precision.
//!
//! There are two ways the tails are obtained:
//!
//! - When the invariants are known (lattices built by [`hexagonal_lattice`] or
//!   [`Lattice::from_invariants`]), every Eisenstein series `G_p` follows from
//!   `(g2, g3)` through the Laurent recurrence of `℘`, and the tail is exactly
//!   `G_p` minus the truncated sum.
//! - Otherwise the tail is estimated by the continuum integral of `ω^{-p}` over
//!   the exterior of the parallelogram, corrected by trapezoid weights on its
//!   boundary. The integral has a closed form through Green's theorem.

use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::quadrature;
use crate::{Error, Result};

pub const DEFAULT_TRUNCATION_RADIUS: u32 = 200;

/// Default half-width of the excluded disk around each lattice point, in
/// units of `|ω₁|`.
pub const DEFAULT_POLE_EXCLUSION: f64 = 1e-3;

/// Number of tail terms kept: `Σ ω^{-p}` for `p = 4, 6, …, 2·TAIL_TERMS + 2`.
pub(crate) const TAIL_TERMS: usize = 8;

#[inline]
pub fn discriminant(g2: Complex64, g3: Complex64) -> Complex64 {
    g2 * g2 * g2 - 27.0 * g3 * g3
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    #[inline]
    fn add_part(sum: &mut f64, carry: &mut f64, x: f64) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *carry += (*sum - t) + x;
        } else {
            *carry += (x - t) + *sum;
        }
        *sum = t;
    }

    #[inline]
    pub(crate) fn add(&mut self, x: Complex64) {
        Self::add_part(&mut self.sum.re, &mut self.carry.re, x.re);
        Self::add_part(&mut self.sum.im, &mut self.carry.im, x.im);
    }

    #[inline]
    pub(crate) fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    omega1: Complex64,
    omega2: Complex64,
    radius: u32,
    pole_exclusion: f64,
    g2: Complex64,
    g3: Complex64,
    tails: [Complex64; TAIL_TERMS],
}

impl Lattice {
    /// Builds the lattice spanned by `omega1`, `omega2` with the default
    /// truncation radius. The invariants are computed from Eisenstein sums.
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        Self::with_radius(omega1, omega2, DEFAULT_TRUNCATION_RADIUS)
    }

    pub fn with_radius(omega1: Complex64, omega2: Complex64, radius: u32) -> Result<Self> {
        let (omega1, omega2) = normalize(omega1, omega2)?;
        if radius == 0 {
            return Err(Error::Domain("truncation radius must be positive".into()));
        }
        let sums = partial_sums(omega1, omega2, radius);
        let tails = estimated_tails(omega1, omega2, radius);
        let g2 = 60.0 * (sums[0] + tails[0]);
        let g3 = 140.0 * (sums[1] + tails[1]);
        let lattice = Lattice {
            omega1,
            omega2,
            radius,
            pole_exclusion: DEFAULT_POLE_EXCLUSION,
            g2,
            g3,
            tails,
        };
        lattice.check_nonsingular()?;
        Ok(lattice)
    }

    /// Builds a lattice whose invariants are known to be `(g2, g3)`. The tails
    /// are then exact: `G_p` from the Laurent recurrence minus the truncated sum.
    pub fn with_known_invariants(
        omega1: Complex64,
        omega2: Complex64,
        radius: u32,
        g2: Complex64,
        g3: Complex64,
    ) -> Result<Self> {
        let (omega1, omega2) = normalize(omega1, omega2)?;
        if radius == 0 {
            return Err(Error::Domain("truncation radius must be positive".into()));
        }
        let sums = partial_sums(omega1, omega2, radius);
        let series = eisenstein_series(g2, g3);
        let mut tails = [Complex64::zero(); TAIL_TERMS];
        for j in 0..TAIL_TERMS {
            tails[j] = series[j] - sums[j];
        }
        let lattice = Lattice {
            omega1,
            omega2,
            radius,
            pole_exclusion: DEFAULT_POLE_EXCLUSION,
            g2,
            g3,
            tails,
        };
        lattice.check_nonsingular()?;
        Ok(lattice)
    }

    /// The lattice of the cubic `y² = 4x³ − g2·x − g3`. Only the equianharmonic
    /// family `g2 = 0` is supported.
    pub fn from_invariants(g2: Complex64, g3: Complex64, radius: u32) -> Result<Self> {
        if !g2.is_zero() {
            return Err(Error::Unsupported(
                "lattice inversion is only implemented for g2 = 0",
            ));
        }
        if g3.is_zero() {
            return Err(Error::Domain("g3 = 0 gives a singular cubic".into()));
        }
        let base = hexagonal_lattice_with_radius(1.0, radius)?;
        // g3 scales as s^-6, so s = g3^(-1/6) (principal branch).
        let s = g3.powf(-1.0 / 6.0);
        let mut scaled = base.scale(s)?;
        scaled.g3 = g3;
        scaled.g2 = Complex64::zero();
        Ok(scaled)
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn truncation_radius(&self) -> u32 {
        self.radius
    }

    /// Cached `(g2, g3)`; the invariants of the curve this lattice parametrizes.
    pub fn invariants(&self) -> (Complex64, Complex64) {
        (self.g2, self.g3)
    }

    pub fn g2(&self) -> Complex64 {
        self.g2
    }

    pub fn g3(&self) -> Complex64 {
        self.g3
    }

    /// Half-width of the excluded disk around lattice points, in units of `|ω₁|`.
    pub fn pole_exclusion(&self) -> f64 {
        self.pole_exclusion
    }

    pub fn with_pole_exclusion(mut self, fraction: f64) -> Result<Self> {
        if !(fraction > 0.0 && fraction < 0.5) {
            return Err(Error::Domain("pole exclusion must lie in (0, 0.5)".into()));
        }
        self.pole_exclusion = fraction;
        Ok(self)
    }

    /// Absolute exclusion radius `pole_exclusion · |ω₁|`.
    pub fn exclusion_radius(&self) -> f64 {
        self.pole_exclusion * self.omega1.norm()
    }

    pub(crate) fn tails(&self) -> &[Complex64; TAIL_TERMS] {
        &self.tails
    }

    /// Lattice point `m·ω₁ + n·ω₂`.
    pub fn point(&self, m: i64, n: i64) -> Complex64 {
        self.omega1 * m as f64 + self.omega2 * n as f64
    }

    /// Real coordinates `(a, b)` with `z = a·ω₁ + b·ω₂`.
    pub fn coordinates(&self, z: Complex64) -> (f64, f64) {
        let det = (self.omega1.conj() * self.omega2).im;
        let a = (z.conj() * self.omega2).im / det;
        let b = (self.omega1.conj() * z).im / det;
        (a, b)
    }

    /// Area of a fundamental parallelogram.
    pub fn cell_area(&self) -> f64 {
        (self.omega1.conj() * self.omega2).im
    }

    /// Representative of `z` mod Λ whose coordinates lie in `[0, 1)`.
    pub fn reduce_to_fundamental(&self, z: Complex64) -> Complex64 {
        let (a, b) = self.coordinates(z);
        let m = libm::floor(a);
        let n = libm::floor(b);
        z - self.omega1 * m - self.omega2 * n
    }

    /// Splits `z = ω + r` with `ω ∈ Λ` and `r` the representative of smallest
    /// modulus among the cell centered at the origin and its neighbours.
    pub fn reduce_centered(&self, z: Complex64) -> (Complex64, Complex64) {
        let (a, b) = self.coordinates(z);
        let m0 = libm::round(a);
        let n0 = libm::round(b);
        let mut best = (z - self.omega1 * m0 - self.omega2 * n0, m0, n0);
        for dm in -1..=1 {
            for dn in -1..=1 {
                let (m, n) = (m0 + dm as f64, n0 + dn as f64);
                let r = z - self.omega1 * m - self.omega2 * n;
                if r.norm_sqr() < best.0.norm_sqr() {
                    best = (r, m, n);
                }
            }
        }
        let (r, m, n) = best;
        (self.omega1 * m + self.omega2 * n, r)
    }

    /// Multiplies both generators by `s`; invariants rescale by `s^-4`, `s^-6`.
    pub fn scale(&self, s: Complex64) -> Result<Self> {
        if s.is_zero() || !s.is_finite() {
            return Err(Error::Domain("scale factor must be finite and nonzero".into()));
        }
        let inv = s.inv();
        let inv2 = inv * inv;
        let mut tails = self.tails;
        let mut factor = inv2 * inv2;
        for t in tails.iter_mut() {
            *t *= factor;
            factor *= inv2;
        }
        Ok(Lattice {
            omega1: self.omega1 * s,
            omega2: self.omega2 * s,
            radius: self.radius,
            pole_exclusion: self.pole_exclusion,
            g2: self.g2 * inv2 * inv2,
            g3: self.g3 * inv2 * inv2 * inv2,
            tails,
        })
    }

    /// `(60 Σ ω^-4, 140 Σ ω^-6)` recomputed from the generators: the truncated
    /// sums over `0 < max(|m|, |n|) ≤ R` plus the estimated exterior tails.
    ///
    /// The truncated sums alone converge like `R^-2` (g2) and `R^-4` (g3); the
    /// tail estimate leaves an error of order `R^-4` and `R^-6` respectively.
    pub fn eisenstein_invariants(&self) -> (Complex64, Complex64) {
        let sums = partial_sums(self.omega1, self.omega2, self.radius);
        let tails = estimated_tails(self.omega1, self.omega2, self.radius);
        (60.0 * (sums[0] + tails[0]), 140.0 * (sums[1] + tails[1]))
    }

    /// The plain truncated sums, with no tail correction.
    pub fn truncated_invariants(&self) -> (Complex64, Complex64) {
        let sums = partial_sums(self.omega1, self.omega2, self.radius);
        (60.0 * sums[0], 140.0 * sums[1])
    }

    pub fn discriminant(&self) -> Complex64 {
        discriminant(self.g2, self.g3)
    }

    fn check_nonsingular(&self) -> Result<()> {
        let d = self.discriminant();
        let scale = libm::pow(self.g2.norm(), 3.0) + 27.0 * self.g3.norm_sqr();
        if d.norm().is_nan() || d.norm() <= 1e-12 * scale {
            return Err(Error::Domain("lattice invariants have zero discriminant".into()));
        }
        Ok(())
    }
}

pub fn scale_lattice(lattice: &Lattice, s: Complex64) -> Result<Lattice> {
    lattice.scale(s)
}

pub fn reduce_to_fundamental(z: Complex64, lattice: &Lattice) -> Complex64 {
    lattice.reduce_to_fundamental(z)
}

pub fn eisenstein_invariants(lattice: &Lattice) -> (Complex64, Complex64) {
    lattice.eisenstein_invariants()
}

/// Enforces `Im(ω₂/ω₁) > 0`, negating `ω₂` when needed.
fn normalize(omega1: Complex64, omega2: Complex64) -> Result<(Complex64, Complex64)> {
    if !(omega1.is_finite() && omega2.is_finite()) || omega1.is_zero() || omega2.is_zero() {
        return Err(Error::Domain("lattice generators must be finite and nonzero".into()));
    }
    let tau = omega2 / omega1;
    if tau.im.abs() <= 1e-12 * tau.norm() {
        return Err(Error::Domain("lattice generators are R-linearly dependent".into()));
    }
    Ok(if tau.im > 0.0 {
        (omega1, omega2)
    } else {
        (omega1, -omega2)
    })
}

/// `Σ ω^{-p}` over `0 < max(|m|, |n|) ≤ R` for `p = 4, 6, …`.
pub(crate) fn partial_sums(omega1: Complex64, omega2: Complex64, radius: u32) -> [Complex64; TAIL_TERMS] {
    let mut acc = [CompensatedSum::default(); TAIL_TERMS];
    let r = radius as i64;
    for k in 1..=r {
        let mut shell = [Complex64::zero(); TAIL_TERMS];
        // Half of the shell; the other half is the negation, which contributes
        // identically to even powers.
        for_half_shell(k, |m, n| {
            let w = omega1 * m as f64 + omega2 * n as f64;
            let inv2 = w.inv().powi(2);
            let mut power = inv2 * inv2;
            for s in shell.iter_mut() {
                *s += power;
                power *= inv2;
            }
        });
        for (a, s) in acc.iter_mut().zip(shell.iter()) {
            a.add(2.0 * s);
        }
    }
    let mut out = [Complex64::zero(); TAIL_TERMS];
    for (o, a) in out.iter_mut().zip(acc.iter()) {
        *o = a.value();
    }
    out
}

/// Visits one representative of each `±(m, n)` pair with `max(|m|, |n|) = k`.
#[inline]
pub(crate) fn for_half_shell(k: i64, mut f: impl FnMut(i64, i64)) {
    // n = k row, then the vertical edges m = ±k for 0 < n < k, then (k, 0).
    for m in -k..=k {
        f(m, k);
    }
    for n in 1..k {
        f(k, n);
        f(-k, n);
    }
    f(k, 0);
}

/// Exterior tails `Σ_{max(|m|,|n|) > R} ω^{-p}` estimated by the continuum
/// integral and a trapezoid correction on the boundary of the parallelogram.
pub(crate) fn estimated_tails(omega1: Complex64, omega2: Complex64, radius: u32) -> [Complex64; TAIL_TERMS] {
    let area = (omega1.conj() * omega2).im;
    let r = radius as f64;
    let vertices = [
        -omega1 - omega2,
        omega1 - omega2,
        omega1 + omega2,
        -omega1 + omega2,
    ];
    let rr = radius as i64;
    let mut out = [Complex64::zero(); TAIL_TERMS];
    for (j, slot) in out.iter_mut().enumerate() {
        let p = 2 * j as i32 + 4;
        let mut contour = Complex64::zero();
        for e in 0..4 {
            contour += edge_integral(vertices[e], vertices[(e + 1) % 4], p);
        }
        // Exterior region: the parallelogram boundary is traversed clockwise.
        let exterior = Complex64::new(0.0, 0.5) * contour;
        let integral = exterior * libm::pow(r, (2 - p) as f64) / area;

        let mut boundary = CompensatedSum::default();
        for_half_shell(rr, |m, n| {
            let corner = m.abs() == rr && n.abs() == rr;
            let weight = if corner { 0.75 } else { 0.5 };
            let w = omega1 * m as f64 + omega2 * n as f64;
            boundary.add(2.0 * weight * w.powi(-p));
        });
        *slot = integral - boundary.value();
    }
    out
}

/// `∫ z̄ z^{-p} dz` along the segment from `a` to `b`.
fn edge_integral(a: Complex64, b: Complex64, p: i32) -> Complex64 {
    let d = b - a;
    let ratio = d.conj() / d;
    let c0 = a.conj() - ratio * a;
    let antiderivative = |z: Complex64| {
        c0 * z.powi(1 - p) / (1 - p) as f64 + ratio * z.powi(2 - p) / (2 - p) as f64
    };
    antiderivative(b) - antiderivative(a)
}

/// Eisenstein series `G_p = Σ ω^{-p}` for `p = 4, 6, …` from `(g2, g3)`, via
/// the Laurent coefficients `c_k` of `℘(z) = z^-2 + Σ c_k z^{2k}`:
/// `c_1 = g2/20`, `c_2 = g3/28`,
/// `c_k = 3/((2k+3)(k−2)) Σ_{m=1}^{k−2} c_m c_{k−1−m}`, and `G_{2k+2} = c_k/(2k+1)`.
pub(crate) fn eisenstein_series(g2: Complex64, g3: Complex64) -> [Complex64; TAIL_TERMS] {
    let mut c = [Complex64::zero(); TAIL_TERMS + 1];
    c[1] = g2 / 20.0;
    if TAIL_TERMS >= 2 {
        c[2] = g3 / 28.0;
    }
    for k in 3..=TAIL_TERMS {
        let mut s = Complex64::zero();
        for m in 1..=k - 2 {
            s += c[m] * c[k - 1 - m];
        }
        c[k] = s * 3.0 / (((2 * k + 3) * (k - 2)) as f64);
    }
    let mut out = [Complex64::zero(); TAIL_TERMS];
    for (j, o) in out.iter_mut().enumerate() {
        let k = j + 1;
        *o = c[k] / (2 * k + 1) as f64;
    }
    out
}

/// Real half-period `∫_{e1}^{∞} dx / √(4x³ − g3)` with `e1 = (g3/4)^{1/3}`.
///
/// With `x = e1/u²` and `u = 1 − s²` the integrand becomes
/// `4·e1 / (√g3 · √(1 + u + u² + u³ + u⁴ + u⁵))` on `s ∈ [0, 1]`, which is smooth.
pub fn real_half_period(g3: f64) -> Result<f64> {
    if !(g3 > 0.0 && g3.is_finite()) {
        return Err(Error::Domain("g3 must be a positive real number".into()));
    }
    let e1 = libm::cbrt(g3 / 4.0);
    let scale = 4.0 * e1 / libm::sqrt(g3);
    let est = quadrature::integrate(
        |s| {
            let u = 1.0 - s * s;
            let poly = 1.0 + u * (1.0 + u * (1.0 + u * (1.0 + u * (1.0 + u))));
            1.0 / libm::sqrt(poly)
        },
        0.0,
        1.0,
        1e-15,
        256,
    );
    Ok(scale * est.value)
}

/// The hexagonal lattice with invariants `(0, g3_target)`: `ω₁` is the full
/// real period and `ω₂ = e^{iπ/3} ω₁`.
pub fn hexagonal_lattice(g3_target: f64) -> Result<Lattice> {
    hexagonal_lattice_with_radius(g3_target, DEFAULT_TRUNCATION_RADIUS)
}

pub fn hexagonal_lattice_with_radius(g3_target: f64, radius: u32) -> Result<Lattice> {
    let omega1 = Complex64::new(2.0 * real_half_period(g3_target)?, 0.0);
    let omega2 = omega1 * Complex64::from_polar(1.0, PI / 3.0);
    Lattice::with_known_invariants(
        omega1,
        omega2,
        radius,
        Complex64::zero(),
        Complex64::new(g3_target, 0.0),
    )
}
