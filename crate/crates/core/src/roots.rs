//! Roots of complex polynomials by the Aberth–Ehrlich iteration.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::{Error, Result};

/// `(p(z), p'(z))` for ascending coefficients.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of `Σ coeffs[k] z^k`, with multiplicity. The leading coefficient
/// must be nonzero.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len().saturating_sub(1);
    let lead = *coeffs
        .last()
        .ok_or_else(|| Error::Domain("empty polynomial".into()))?;
    if lead.is_zero() {
        return Err(Error::Domain("leading coefficient is zero".into()));
    }
    if degree == 0 {
        return Ok(Vec::new());
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Domain("non-finite coefficient".into()));
    }
    // Cauchy bound on the root moduli.
    let bound = 1.0
        + coeffs[..degree]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let start = 0.5 * bound;
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(start, 2.0 * PI * k as f64 / degree as f64 + 0.4))
        .collect();

    for _ in 0..1000 {
        let mut largest = 0.0f64;
        for i in 0..degree {
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                largest = largest.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if largest < 1e-15 {
            break;
        }
    }
    Ok(z)
}

/// Groups roots closer than `tol` (relative to `max(1, |z|)`), returning each
/// cluster's mean with its size.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        match clusters
            .iter_mut()
            .find(|(c, _)| (*c - r).norm() <= tol * c.norm().max(1.0))
        {
            Some((c, count)) => {
                *c = (*c * *count as f64 + r) / (*count + 1) as f64;
                *count += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn roots_of_a_cubic() {
        // (z - 1)(z + 2)(z - i) = z^3 + (1 - i) z^2 + (-2 - i) z + 2i
        let coeffs = [c(0.0, 2.0), c(-2.0, -1.0), c(1.0, -1.0), c(1.0, 0.0)];
        let roots = polynomial_roots(&coeffs).unwrap();
        for want in [c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 1.0)] {
            assert!(roots.iter().any(|r| (r - want).norm() < 1e-12), "{roots:?}");
        }
    }

    #[test]
    fn roots_of_unity() {
        let mut coeffs = alloc::vec![Complex64::zero(); 8];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[7] = c(1.0, 0.0);
        let roots = polynomial_roots(&coeffs).unwrap();
        assert_eq!(roots.len(), 7);
        for r in &roots {
            assert!((r.powi(7) - 1.0).norm() < 1e-13);
        }
        assert_eq!(cluster_roots(&roots, 1e-6).len(), 7);
    }

    #[test]
    fn double_root_clusters() {
        // (z - 1)^2 (z + 1)
        let coeffs = [c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)];
        let roots = polynomial_roots(&coeffs).unwrap();
        let clusters = cluster_roots(&roots, 1e-6);
        assert_eq!(clusters.len(), 2);
        assert!(clusters.iter().any(|&(r, m)| m == 2 && (r - 1.0).norm() < 1e-6));
    }

    #[test]
    fn zero_leading_coefficient_is_rejected() {
        assert!(polynomial_roots(&[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
        assert!(polynomial_roots(&[]).is_err());
    }
}
