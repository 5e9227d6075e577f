//! Extremal problems on the unit ball of `C^2` seen through the embedded disk
//! `φ(ζ) = (ζ, ζ²)/√2`.
//!
//! The disk `φ(D)` is the slice `{z₂ = √2 z₁²}` of the ball and its boundary
//! circle lies on the sphere. Functions on the ball that restrict to a given
//! inner function on `φ(D)` without increasing the sup norm are rigid: they
//! must satisfy a tangential first-order condition along `φ(∂D)` (see
//! [`l_derivation`]).

mod embedding;
mod hull;
mod perturb;
mod probes;
mod sphere;

pub use embedding::{
    extension_gk, g2, g3, l_derivation, phi, restrict_to_disk, sqrt2_z1, w2, w_decompose,
    WDecomposition,
};
pub use hull::{default_witnesses, hull_certificate, torus_samples, HullVerdict, HULL_MARGIN};
pub use perturb::{nonuniqueness_witness, perturbation_gap, NonuniquenessWitness, PerturbationGap};
pub use probes::{probe_cubic_extensions, probe_linear_extensions, MarginReport};
pub use sphere::{
    extension_report, max_modulus_set, scan_grid, sphere_sup, ExtensionReport, GridScan,
    ScanOptions, SpherePoint, SupScan, DEFAULT_GRID,
};
