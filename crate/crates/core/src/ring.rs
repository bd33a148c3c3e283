//! Exact polynomial arithmetic.
//!
//! [`RingPoly`] is a polynomial in `y` whose coefficients are either plain
//! integers or residues in `Z[t]/(tⁿ + 1)`. The quotient ring stands for every
//! root `ω` of `xⁿ = −1` at once. It is not a domain for most `n`, so only
//! addition, multiplication and comparison are offered.
//!
//! [`BiPoly`] is a sparse polynomial in `x, y` over `Z`, enough to compare
//! rational expressions by cross-multiplication.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of `Z` or `Z[t]/(tⁿ + 1)`: dense coefficients in `t`, with
/// trailing zeros trimmed, always of degree `< n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Residue {
    coeffs: Vec<BigInt>,
}

impl Residue {
    pub fn zero() -> Self {
        Residue { coeffs: Vec::new() }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        let mut r = Residue {
            coeffs: vec![c.into()],
        };
        r.trim();
        r
    }

    /// `c·t^k` reduced with `tⁿ = −1`.
    pub fn monomial(c: impl Into<BigInt>, k: u64, modulus: u32) -> Self {
        let n = modulus as u64;
        let wraps = k / n;
        let k = (k % n) as usize;
        let mut c: BigInt = c.into();
        if wraps % 2 == 1 {
            c = -c;
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        let mut r = Residue { coeffs };
        r.trim();
        r
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>, modulus: Option<u32>) -> Self {
        let mut acc = Residue::zero();
        match modulus {
            None => {
                assert!(coeffs.len() <= 1, "integer residues have no t terms");
                if let Some(c) = coeffs.into_iter().next() {
                    acc = Residue::from_int(c);
                }
            }
            Some(n) => {
                for (k, c) in coeffs.into_iter().enumerate() {
                    acc = acc.add(&Residue::monomial(c, k as u64, n));
                }
            }
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Dense coefficient vector of length `len` (pads with zeros).
    pub fn to_vec(&self, len: usize) -> Vec<BigInt> {
        (0..len.max(self.coeffs.len())).map(|k| self.coeff(k)).collect()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => BigInt::zero(),
            });
        }
        let mut r = Residue { coeffs };
        r.trim();
        r
    }

    pub fn neg(&self) -> Self {
        Residue {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product, reduced with `tⁿ = −1` when a modulus is given. Only nonzero
    /// entries are visited, so monomials multiply in constant time.
    pub fn mul(&self, other: &Self, modulus: Option<u32>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Residue::zero();
        }
        let n = match modulus {
            Some(n) => n as usize,
            None => self.coeffs.len() + other.coeffs.len(),
        };
        let mut out = vec![BigInt::zero(); n.min(self.coeffs.len() + other.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let k = i + j;
                if k >= n {
                    out[k - n] -= a * b;
                } else {
                    out[k] += a * b;
                }
            }
        }
        let mut r = Residue { coeffs: out };
        r.trim();
        r
    }

    /// Numeric value at `t = ω`.
    pub fn eval(&self, omega: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        let mut power = Complex64::one();
        for c in &self.coeffs {
            acc += power * big_to_f64(c);
            power *= omega;
        }
        acc
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Polynomial in `y` with [`Residue`] coefficients, indexed by power of `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPoly {
    modulus: Option<u32>,
    coeffs: Vec<Residue>,
}

impl RingPoly {
    pub fn zero(modulus: Option<u32>) -> Self {
        RingPoly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn integer(coeffs: Vec<BigInt>) -> Self {
        let mut p = RingPoly {
            modulus: None,
            coeffs: coeffs.into_iter().map(Residue::from_int).collect(),
        };
        p.trim();
        p
    }

    pub fn from_residues(modulus: Option<u32>, coeffs: Vec<Residue>) -> Self {
        let mut p = RingPoly { modulus, coeffs };
        p.trim();
        p
    }

    /// `a + b·y`.
    pub fn linear(modulus: Option<u32>, a: Residue, b: Residue) -> Self {
        RingPoly::from_residues(modulus, vec![a, b])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    /// Degree in `y`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Residue {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[Residue] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mixed coefficient rings");
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        RingPoly::from_residues(self.modulus, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mixed coefficient rings");
        if self.is_zero() || other.is_zero() {
            return RingPoly::zero(self.modulus);
        }
        let mut out = vec![Residue::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b, self.modulus));
            }
        }
        RingPoly::from_residues(self.modulus, out)
    }

    /// `self^e` by repeated multiplication.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RingPoly::from_residues(self.modulus, vec![Residue::from_int(1)]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Numeric coefficients with `t = ω` (ignored for integer polynomials).
    pub fn specialize(&self, omega: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.eval(omega)).collect()
    }

    /// First power of `y` where the two polynomials differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find(|&k| self.coeff(k) != other.coeff(k))
    }
}

impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let monomial = c.coefficients().iter().filter(|x| !x.is_zero()).count() == 1;
            let integer = c.coefficients().len() == 1;
            if integer {
                let v = &c.coefficients()[0];
                if !first {
                    f.write_str(if v.is_negative() { " - " } else { " + " })?;
                } else if v.is_negative() {
                    f.write_str("-")?;
                }
                let mag = v.abs();
                if k == 0 || !mag.is_one() {
                    write!(f, "{mag}")?;
                }
            } else {
                if !first {
                    f.write_str(" + ")?;
                }
                if monomial && k > 0 {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})")?;
                }
            }
            first = false;
            match k {
                0 => {}
                1 => f.write_str("y")?,
                _ => write!(f, "y^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `C(n, k)` by the multiplicative formula.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Sparse polynomial in `x, y` over `Z`, keyed by `(deg_x, deg_y)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn term(c: impl Into<BigInt>, dx: u32, dy: u32) -> Self {
        let mut p = BiPoly::zero();
        p.insert((dx, dy), c.into());
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BiPoly::term(c, 0, 0)
    }

    pub fn x() -> Self {
        BiPoly::term(1, 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::term(1, 0, 1)
    }

    fn insert(&mut self, key: (u32, u32), c: BigInt) {
        let entry = self.terms.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.insert(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &other.terms {
                out.insert((ax + bx, ay + by), a * b);
            }
        }
        out
    }

    /// Substitutes `(x, y) ↦ (y, x)`.
    pub fn swap_variables(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(dx, dy), c)| ((dy, dx), c.clone())).collect(),
        }
    }
}

/// A rational expression `numerator / denominator` in `x, y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational {
    pub numerator: BiPoly,
    pub denominator: BiPoly,
}

impl Rational {
    pub fn new(numerator: BiPoly, denominator: BiPoly) -> Self {
        Rational {
            numerator,
            denominator,
        }
    }

    pub fn swap_variables(&self) -> Self {
        Rational::new(self.numerator.swap_variables(), self.denominator.swap_variables())
    }

    pub fn neg(&self) -> Self {
        Rational::new(self.numerator.neg(), self.denominator.clone())
    }

    /// Equality as rational functions: `a·d − b·c = 0`.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.numerator
            .mul(&other.denominator)
            .sub(&other.numerator.mul(&self.denominator))
            .is_zero()
    }
}
