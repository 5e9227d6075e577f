//! Finite-dimensional models of `H²(μ)` for a probability measure `μ` on a
//! curve in the sphere, with reproducing kernels and the compressed adjoint
//! of multiplication.
//!
//! The model measure is the push-forward of normalised arc length on the
//! circle under `φ`. Because `z₂ = √2 z₁²` holds on its support, monomials
//! collapse in `L²(μ)` and every Gram matrix is rank deficient; all linear
//! algebra therefore works on the quotient by the null space.

mod operator;
mod quadrature;
mod space;

pub use operator::{kernel_eigen_residual, multiplier_adjoint, restricted_norm, MultiplierAdjoint};
pub use quadrature::{
    arc_measure_on_phi, max_principle_check, representing_density, MaxPrincipleCheck, MeasureSpec,
    QuadratureMeasure,
};
pub use space::{
    kernel_norm_growth, min_nodes_for_degree, Growth, KernelVector, TruncatedH2, GRAM_CUTOFF,
};
