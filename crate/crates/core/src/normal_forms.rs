//! Normal forms of the Fermat curves `F_n: xⁿ + yⁿ = 1`.
//!
//! The change of variables `(x, y) ↦ (x − y, x + y)` followed by
//! `(x, y) ↦ (1/x, y/x)` carries `F_n`, for odd `n`, to
//!
//! ```text
//! E2: 2 + 2 Σ_{k=1}^{(n−1)/2} C(n, 2k) y^{2k} = xⁿ,
//! Φ(x, y) = (2/(y+x), (y−x)/(y+x)),   Φ⁻¹(x, y) = ((1−y)/x, (1+y)/x).
//! ```
//!
//! For even `n` the first step uses `(x + ωy, x + y)` with `ωⁿ = −1`:
//!
//! ```text
//! E2: 2 + Σ_{k=1}^{n−1} C(n, k)(1 + ω^k) y^k = xⁿ,
//! Φ(x, y) = ((ω−1)/(ωy−x), (x−y)/(ωy−x)),   Φ⁻¹(x, y) = ((1+ωy)/x, (1+y)/x).
//! ```
//!
//! The identities are proved exactly: `(1−y)ⁿ + (1+y)ⁿ` (resp.
//! `(1+ty)ⁿ + (1+y)ⁿ` in `Z[t]/(tⁿ+1)`) is expanded by repeated
//! multiplication and compared with the binomial formula coefficient by
//! coefficient.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;

use crate::maps::{ensure_on_curve, AffinePoint, CurveTag, DEFAULT_MEMBERSHIP_TOLERANCE};
use crate::ring::{binomial, BiPoly, Rational, Residue, RingPoly};
use crate::roots::{cluster_roots, polynomial_roots};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: u32) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

/// Degree and root choice for the maps between `F_n` and its `E2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FermatMapSpec {
    n: u32,
    root_index: u32,
}

impl FermatMapSpec {
    /// `root_index` selects `ω = exp(iπ(2k+1)/n)` and must be `< n`; it is
    /// ignored (and stored as 0) for odd `n`.
    pub fn new(n: u32, root_index: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("Fermat degree must be at least 3, got {n}")));
        }
        match Parity::of(n) {
            Parity::Odd => Ok(FermatMapSpec { n, root_index: 0 }),
            Parity::Even if root_index < n => Ok(FermatMapSpec { n, root_index }),
            Parity::Even => Err(Error::Domain(format!(
                "root index {root_index} out of range for n = {n}"
            ))),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.n)
    }

    pub fn root_index(&self) -> Option<u32> {
        match self.parity() {
            Parity::Odd => None,
            Parity::Even => Some(self.root_index),
        }
    }

    /// `ω = exp(iπ(2k+1)/n)`, a root of `xⁿ = −1`. Only meaningful for even `n`.
    pub fn omega(&self) -> Complex64 {
        omega(self.n, self.root_index)
    }

    pub fn fermat_tag(&self) -> CurveTag {
        CurveTag::Fermat(self.n)
    }

    pub fn e2_tag(&self) -> CurveTag {
        CurveTag::E2 {
            n: self.n,
            root_index: self.root_index(),
        }
    }
}

pub fn omega(n: u32, root_index: u32) -> Complex64 {
    Complex64::from_polar(1.0, PI * (2 * root_index + 1) as f64 / n as f64)
}

/// `2 + 2 Σ_{k=1}^{(n−1)/2} C(n, 2k) y^{2k}` for odd `n ≥ 3`.
pub fn e2_odd(n: u32) -> Result<RingPoly> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Domain(format!("e2_odd needs odd n >= 3, got {n}")));
    }
    let mut coeffs = vec![BigInt::zero(); n as usize];
    coeffs[0] = BigInt::from(2);
    for k in 1..=(n - 1) / 2 {
        coeffs[2 * k as usize] = 2 * binomial(n, 2 * k);
    }
    Ok(RingPoly::integer(coeffs))
}

/// `2 + Σ_{k=1}^{n−1} C(n, k)(1 + t^k) y^k` over `Z[t]/(tⁿ + 1)`, for even `n ≥ 4`.
pub fn e2_even(n: u32) -> Result<RingPoly> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Domain(format!("e2_even needs even n >= 4, got {n}")));
    }
    let mut coeffs = Vec::with_capacity(n as usize);
    coeffs.push(Residue::from_int(2));
    for k in 1..n {
        let c = binomial(n, k);
        coeffs.push(Residue::from_int(c.clone()).add(&Residue::monomial(c, k as u64, n)));
    }
    Ok(RingPoly::from_residues(Some(n), coeffs))
}

/// Numeric coefficients of the `E2` polynomial in `y`; `root_index` is
/// required for even `n`.
pub fn e2_numeric(n: u32, root_index: Option<u32>) -> Result<Vec<Complex64>> {
    match (Parity::of(n), root_index) {
        (Parity::Odd, _) => Ok(e2_odd(n)?.specialize(Complex64::one())),
        (Parity::Even, Some(k)) => {
            let spec = FermatMapSpec::new(n, k)?;
            Ok(e2_even(n)?.specialize(spec.omega()))
        }
        (Parity::Even, None) => Err(Error::Domain("even n needs a root index".into())),
    }
}

/// Outcome of an exact identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofReport {
    pub n: u32,
    pub parity: Parity,
    pub identity_holds: bool,
    /// The expanded `(1−y)ⁿ + (1+y)ⁿ` or `(1+ty)ⁿ + (1+y)ⁿ`.
    pub lhs: RingPoly,
    /// The binomial-formula `E2` polynomial.
    pub rhs: RingPoly,
    pub first_mismatch: Option<usize>,
    /// For even `n`: the `yⁿ` coefficient of the expansion reduced to zero.
    pub top_coefficient_vanishes: Option<bool>,
}

pub fn verify_identity_odd(n: u32) -> Result<ProofReport> {
    let rhs = e2_odd(n)?;
    let one = Residue::from_int(1);
    let minus = RingPoly::linear(None, one.clone(), Residue::from_int(-1));
    let plus = RingPoly::linear(None, one.clone(), one);
    let lhs = minus.pow(n).add(&plus.pow(n));
    let first_mismatch = lhs.first_mismatch(&rhs);
    Ok(ProofReport {
        n,
        parity: Parity::Odd,
        identity_holds: first_mismatch.is_none(),
        lhs,
        rhs,
        first_mismatch,
        top_coefficient_vanishes: None,
    })
}

pub fn verify_identity_even(n: u32) -> Result<ProofReport> {
    let rhs = e2_even(n)?;
    let one = Residue::from_int(1);
    let t = Residue::monomial(1, 1, n);
    let with_t = RingPoly::linear(Some(n), one.clone(), t);
    let plain = RingPoly::linear(Some(n), one.clone(), one);
    let lhs = with_t.pow(n).add(&plain.pow(n));
    let first_mismatch = lhs.first_mismatch(&rhs);
    Ok(ProofReport {
        n,
        parity: Parity::Even,
        identity_holds: first_mismatch.is_none(),
        top_coefficient_vanishes: Some(lhs.coeff(n as usize).is_zero()),
        lhs,
        rhs,
        first_mismatch,
    })
}

/// Dispatches on the parity of `n`.
pub fn verify_identity(n: u32) -> Result<ProofReport> {
    match Parity::of(n) {
        Parity::Odd => verify_identity_odd(n),
        Parity::Even => verify_identity_even(n),
    }
}

/// Denominators below this are reported as near-pole conditioning errors.
const DENOMINATOR_FLOOR: f64 = 1e-300;

/// `Φ: F_n → E2`.
pub fn phi_n(p: &AffinePoint, spec: &FermatMapSpec) -> Result<AffinePoint> {
    phi_n_checked(p, spec, DEFAULT_MEMBERSHIP_TOLERANCE)
}

pub fn phi_n_checked(p: &AffinePoint, spec: &FermatMapSpec, tolerance: f64) -> Result<AffinePoint> {
    ensure_on_curve(p, spec.fermat_tag(), tolerance)?;
    let (x, y) = (p.x, p.y);
    let (u, v) = match spec.parity() {
        Parity::Odd => {
            let d = y + x;
            if d.norm() < DENOMINATOR_FLOOR {
                return Err(Error::Conditioning(d.norm()));
            }
            (2.0 / d, (y - x) / d)
        }
        Parity::Even => {
            let w = spec.omega();
            let d = w * y - x;
            if d.norm() < DENOMINATOR_FLOOR {
                return Err(Error::Conditioning(d.norm()));
            }
            ((w - 1.0) / d, (x - y) / d)
        }
    };
    Ok(AffinePoint::new(u, v, spec.e2_tag()))
}

/// `Φ⁻¹: E2 → F_n`.
pub fn phi_inv_n(p: &AffinePoint, spec: &FermatMapSpec) -> Result<AffinePoint> {
    phi_inv_n_checked(p, spec, DEFAULT_MEMBERSHIP_TOLERANCE)
}

pub fn phi_inv_n_checked(p: &AffinePoint, spec: &FermatMapSpec, tolerance: f64) -> Result<AffinePoint> {
    ensure_on_curve(p, spec.e2_tag(), tolerance)?;
    if p.x.is_zero() {
        return Err(Error::AtInfinity("x = 0 maps to a point at infinity of F_n"));
    }
    let inv = p.x.inv();
    let (a, b) = match spec.parity() {
        Parity::Odd => ((1.0 - p.y) * inv, (1.0 + p.y) * inv),
        Parity::Even => ((1.0 + spec.omega() * p.y) * inv, (1.0 + p.y) * inv),
    };
    Ok(AffinePoint::new(a, b, spec.fermat_tag()))
}

/// A point of `F_n`: `y` uniform in the disk of radius 1.2, `x` a uniformly
/// chosen `n`-th root of `1 − yⁿ`.
pub fn sample_fermat_point<R: Rng + ?Sized>(n: u32, rng: &mut R) -> AffinePoint {
    let radius = 1.2 * libm::sqrt(rng.gen::<f64>());
    let angle = 2.0 * PI * rng.gen::<f64>();
    let y = Complex64::from_polar(radius, angle);
    let rhs = 1.0 - y.powi(n as i32);
    let sheet = rng.gen_range(0..n);
    let x = rhs.powf(1.0 / n as f64) * Complex64::from_polar(1.0, 2.0 * PI * sheet as f64 / n as f64);
    AffinePoint::new(x, y, CurveTag::Fermat(n))
}

/// A point of the even-degree `E2` for `spec`: random `y`, `x` an `n`-th root
/// of `e2(y)`.
pub fn sample_e2_point<R: Rng + ?Sized>(spec: &FermatMapSpec, rng: &mut R) -> Result<AffinePoint> {
    let coeffs = e2_numeric(spec.n(), spec.root_index())?;
    let y = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
    let rhs = crate::maps::horner(&coeffs, y);
    let sheet = rng.gen_range(0..spec.n());
    let x = rhs.powf(1.0 / spec.n() as f64)
        * Complex64::from_polar(1.0, 2.0 * PI * sheet as f64 / spec.n() as f64);
    Ok(AffinePoint::new(x, y, spec.e2_tag()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionReport {
    pub n: u32,
    /// `Φ ∘ Ī` and `I ∘ Φ` agree as rational expressions in `x, y`.
    pub symbolic_holds: bool,
    pub samples: usize,
    /// Largest `|Φ(Ī(p)) − I(Φ(p))|` over the samples.
    pub max_deviation: f64,
}

impl InvolutionReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.symbolic_holds && self.max_deviation < tolerance
    }
}

/// Checks `Φ ∘ Ī = I ∘ Φ` for odd `n`, with `Ī(x, y) = (y, x)` on `F_n` and
/// `I(x, y) = (x, −y)` on `E2`.
pub fn involution_conjugacy_check<R: Rng + ?Sized>(
    n: u32,
    samples: usize,
    rng: &mut R,
) -> Result<InvolutionReport> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Domain(format!("involution check needs odd n >= 3, got {n}")));
    }
    let spec = FermatMapSpec::new(n, 0)?;

    // Φ as rational expressions: (2/(x+y), (y−x)/(x+y)).
    let sum = BiPoly::x().add(&BiPoly::y());
    let first = Rational::new(BiPoly::constant(2), sum.clone());
    let second = Rational::new(BiPoly::y().sub(&BiPoly::x()), sum);
    let symbolic_holds = first.swap_variables().equivalent(&first)
        && second.swap_variables().equivalent(&second.neg());

    let mut max_deviation = 0.0f64;
    for _ in 0..samples {
        let p = sample_fermat_point(n, rng);
        let swapped = AffinePoint::new(p.y, p.x, p.curve);
        let lhs = phi_n(&swapped, &spec)?;
        let image = phi_n(&p, &spec)?;
        let rhs = AffinePoint::new(image.x, -image.y, image.curve);
        let deviation = (lhs.x - rhs.x).norm().max((lhs.y - rhs.y).norm());
        max_deviation = max_deviation.max(deviation);
    }
    Ok(InvolutionReport {
        n,
        symbolic_holds,
        samples,
        max_deviation,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeReport {
    pub n: u32,
    pub w: Complex64,
    /// The `xⁿ` (odd) or `yⁿ` (even) coefficient cancelled exactly.
    pub leading_cancels: bool,
    /// Degree of the eliminated one-variable polynomial.
    pub eliminated_degree: usize,
    /// Distinct preimage points on `F_n` with their multiplicities.
    pub preimages: Vec<(AffinePoint, usize)>,
    /// Two or more roots coincided within the clustering tolerance; `w` is
    /// close to a critical value.
    pub near_critical: bool,
}

impl DegreeReport {
    /// Number of preimages counted with multiplicity.
    pub fn count(&self) -> usize {
        self.preimages.iter().map(|(_, m)| m).sum()
    }
}

/// Tolerance for merging roots into one preimage of higher multiplicity.
pub const MULTIPLICITY_TOLERANCE: f64 = 1e-6;

/// Counts the preimages of `w` under `2/(x+y)` (odd `n`) or
/// `(ω−1)/(ωy−x)` (even `n`) on `F_n`.
///
/// The level set is a line `x + y = s` (resp. `x = ωy − s`); substituting into
/// `xⁿ + yⁿ = 1` gives a polynomial whose top coefficient `1 + (−1)ⁿ`
/// (resp. `1 + ωⁿ`) is checked to vanish exactly, the latter in `Z[t]/(tⁿ+1)`.
pub fn projection_degree_check(spec: &FermatMapSpec, w: Complex64) -> Result<DegreeReport> {
    if w.is_zero() || !w.is_finite() {
        return Err(Error::Domain("w must be finite and nonzero".into()));
    }
    let n = spec.n();
    let nn = n as usize;
    // coefficient of v^k (v = x for odd, y for even) is
    //   exact_k · s^{n−k} + [k = n] − [k = 0]
    // with exact_k ∈ Z (odd) or Z[t]/(tⁿ+1) (even).
    let (s, omega_value) = match spec.parity() {
        Parity::Odd => (2.0 / w, Complex64::one()),
        Parity::Even => ((spec.omega() - 1.0) / w, spec.omega()),
    };
    let exact: Vec<Residue> = (0..=n)
        .map(|k| {
            let c = binomial(n, k);
            match spec.parity() {
                // (s − x)ⁿ: C(n,k) (−1)^k s^{n−k} x^k
                Parity::Odd => Residue::from_int(if k % 2 == 1 { -c } else { c }),
                // (ωy − s)ⁿ: C(n,k) ω^k (−1)^{n−k} s^{n−k} y^k
                Parity::Even => {
                    let signed = if (n - k) % 2 == 1 { -c } else { c };
                    Residue::monomial(signed, k as u64, n)
                }
            }
        })
        .collect();
    let leading = exact[nn].add(&Residue::from_int(1));
    let leading_cancels = leading.is_zero();
    if !leading_cancels {
        return Err(Error::Domain(format!(
            "leading coefficient {leading} does not cancel"
        )));
    }

    let mut coeffs: Vec<Complex64> = (0..nn)
        .map(|k| exact[k].eval(omega_value) * s.powi((n as usize - k) as i32))
        .collect();
    coeffs[0] -= 1.0;
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let eliminated_degree = coeffs.len().saturating_sub(1);

    let roots = polynomial_roots(&coeffs)?;
    let clusters = cluster_roots(&roots, MULTIPLICITY_TOLERANCE);
    let near_critical = clusters.iter().any(|&(_, m)| m > 1);
    let preimages = clusters
        .into_iter()
        .map(|(v, m)| {
            let point = match spec.parity() {
                Parity::Odd => AffinePoint::new(v, s - v, spec.fermat_tag()),
                Parity::Even => AffinePoint::new(omega_value * v - s, v, spec.fermat_tag()),
            };
            (point, m)
        })
        .filter(|(p, _)| {
            p.residual() < 1e-8
                && level_value(p, spec)
                    .is_some_and(|value| (value - w).norm() <= 1e-8 * w.norm().max(1.0))
        })
        .collect();

    Ok(DegreeReport {
        n,
        w,
        leading_cancels,
        eliminated_degree,
        preimages,
        near_critical,
    })
}

/// The degree-`(n−1)` function `2/(x+y)` or `(ω−1)/(ωy−x)` at `p`.
pub fn level_value(p: &AffinePoint, spec: &FermatMapSpec) -> Option<Complex64> {
    let d = match spec.parity() {
        Parity::Odd => p.x + p.y,
        Parity::Even => spec.omega() * p.y - p.x,
    };
    if d.is_zero() {
        return None;
    }
    Some(match spec.parity() {
        Parity::Odd => 2.0 / d,
        Parity::Even => (spec.omega() - 1.0) / d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn e2_odd_examples() {
        assert_eq!(e2_odd(3).unwrap().to_string(), "2 + 6y^2");
        assert_eq!(e2_odd(5).unwrap().to_string(), "2 + 20y^2 + 10y^4");
        assert_eq!(e2_odd(7).unwrap().to_string(), "2 + 42y^2 + 70y^4 + 14y^6");
        assert!(e2_odd(4).is_err());
        assert!(e2_odd(1).is_err());
    }

    #[test]
    fn e2_even_examples() {
        let p = e2_even(4).unwrap();
        let y2 = Residue::from_int(6).add(&Residue::monomial(6, 2, 4));
        assert_eq!(p.coeff(2), y2);
        assert_eq!(p.degree(), Some(3));
        assert!(p.coeff(4).is_zero());
        assert!(e2_even(2).is_err());
        assert!(e2_even(5).is_err());
    }

    #[test]
    fn small_identities() {
        let odd = verify_identity_odd(3).unwrap();
        assert!(odd.identity_holds);
        assert_eq!(odd.lhs.to_string(), "2 + 6y^2");
        let even = verify_identity_even(4).unwrap();
        assert!(even.identity_holds);
        assert_eq!(even.top_coefficient_vanishes, Some(true));
    }

    #[test]
    fn spec_validation() {
        assert!(FermatMapSpec::new(2, 0).is_err());
        assert!(FermatMapSpec::new(4, 4).is_err());
        let s = FermatMapSpec::new(6, 5).unwrap();
        assert!((s.omega().powi(6) + 1.0).norm() < 1e-12);
        assert_eq!(FermatMapSpec::new(5, 3).unwrap().root_index(), None);
    }

    #[test]
    fn phi_n_unit_point() {
        for n in [3, 5] {
            let spec = FermatMapSpec::new(n, 0).unwrap();
            let p = AffinePoint::real(1.0, 0.0, CurveTag::Fermat(n));
            let image = phi_n(&p, &spec).unwrap();
            assert_eq!(image.x, Complex64::new(2.0, 0.0));
            assert_eq!(image.y, Complex64::new(-1.0, 0.0));
            assert!(image.residual() < 1e-15);
            let back = phi_inv_n(&image, &spec).unwrap();
            assert!((back.x - 1.0).norm() < 1e-15 && back.y.norm() < 1e-15);
        }
    }

    #[test]
    fn projection_rejects_zero() {
        let spec = FermatMapSpec::new(3, 0).unwrap();
        assert!(projection_degree_check(&spec, Complex64::zero()).is_err());
    }
}
