use alloc::string::String;

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    /// The argument lies within the exclusion disk of a lattice point, where `℘` has a pole.
    #[error("pole of the Weierstrass function near lattice point {nearest}")]
    Pole { nearest: Complex64 },

    /// `℘(z)` vanishes, so the uniformizing pair `(f, g)` has a pole.
    #[error("solution pole: wp({z}) = {value} is numerically zero")]
    SolutionPole { z: Complex64, value: Complex64 },

    /// A map denominator vanished; the image is a point at infinity.
    #[error("point at infinity: {0}")]
    AtInfinity(&'static str),

    #[error("point is not on {curve} (residual {residual:e}, tolerance {tolerance:e})")]
    OffCurve {
        curve: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("near-pole conditioning: |denominator| = {0:e}")]
    Conditioning(f64),

    #[error(transparent)]
    Expr(#[from] ExprError),
}
