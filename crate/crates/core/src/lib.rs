//! Minimal sup-norm holomorphic interpolation.
//!
//! The crate solves and certifies the finite interpolation problem
//! `f(a_j) = v_j` with the smallest possible sup norm on the unit disk, and
//! probes the analogous problem on the unit ball of `C^2` through the
//! embedded disk `φ(ζ) = (ζ, ζ²)/√2`.
//!
//! * [`poly`]: complex polynomials in one and two variables, Möbius maps and
//!   finite Blaschke products.
//! * [`disk`]: Pick-matrix bisection solver, extremal Blaschke construction,
//!   Schur reduction and sufficient-subproblem enumeration.
//! * [`ball`]: norm-preserving extensions from the embedded disk, sphere
//!   sup-norm scans, maximum-modulus sets and hull certificates.
//! * [`measure`]: quadrature measures on boundary curves, truncated `H²(μ)`,
//!   reproducing kernels and the adjoint-multiplication representation.

// `!(x < 1.0)` style checks are deliberate: NaN has to fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ball;
pub mod disk;
pub mod error;
pub mod measure;
pub mod poly;
pub mod rng;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use poly::{BiPoly, BlaschkeProduct, MoebiusMap, UniPoly};

/// `√2`, the only spelling of it used anywhere in the crate.
pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// `1/√2`.
pub const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Per-coefficient absolute tolerance for polynomial equality.
pub const COEFF_TOL: f64 = 1e-12;

/// A point of `C^2`.
pub type Point2 = [C64; 2];

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Euclidean norm of a point of `C^2`.
pub fn norm2(z: &Point2) -> f64 {
    (z[0].norm_sqr() + z[1].norm_sqr()).sqrt()
}
