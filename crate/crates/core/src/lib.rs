//! Uniformization of the Fermat cubic `x^3 + y^3 = 1` by Weierstrass elliptic
//! functions, together with exact normal forms for Fermat curves of any degree.
//!
//! The crate is `no_std` and only needs `alloc`. Numerical pieces work in
//! `f64` complex arithmetic; the normal-form identities are checked with exact
//! big-integer polynomial arithmetic.
//!
//! Module map:
//!
//! - [`lattice`]: period lattices, Eisenstein invariants, reduction mod the lattice.
//! - [`weierstrass`]: evaluation of `℘`, `℘'` and the map `z ↦ (℘(z), ℘'(z))`.
//! - [`maps`]: the birational maps between the Fermat cubic and its Weierstrass
//!   forms, and the composed uniformizations.
//! - [`normal_forms`]: the degree-`n` generalization with exact identity proofs.
//! - [`expr`]: a small language for entire functions `α`.
//! - [`ring`]: exact polynomials over `Z` and `Z[t]/(t^n + 1)`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod expr;
pub mod lattice;
pub mod maps;
pub mod normal_forms;
pub mod quadrature;
pub mod ring;
pub mod roots;
pub mod weierstrass;

pub use error::Error;
pub use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;
