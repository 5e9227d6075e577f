//! Seeded random streams.
//!
//! Every randomized routine derives an independent ChaCha stream from a
//! `(seed, index)` pair, so sample `i` of a batch is the same no matter how
//! the batch is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{BiPoly, BlaschkeProduct, C64};

pub const DEFAULT_SEED: u64 = 0xA11CE;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform point in the disk of the given radius.
pub fn disk_point<R: Rng>(rng: &mut R, radius: f64) -> C64 {
    let r = radius * rng.random::<f64>().sqrt();
    let t = std::f64::consts::TAU * rng.random::<f64>();
    C64::from_polar(r, t)
}

/// Polynomial of total degree at most `max_degree` with every coefficient
/// drawn uniformly from the unit disk.
pub fn bipoly<R: Rng>(rng: &mut R, max_degree: u32) -> BiPoly {
    let mut terms = Vec::new();
    for n in 0..=max_degree {
        for q in 0..=n {
            terms.push((n - q, q, disk_point(rng, 1.0)));
        }
    }
    BiPoly::from_terms(terms)
}

/// Blaschke product with `degree` zeros in `|ζ| <= max_radius` and a uniform
/// rotation.
pub fn blaschke<R: Rng>(rng: &mut R, degree: usize, max_radius: f64) -> BlaschkeProduct {
    let zeros = (0..degree).map(|_| disk_point(rng, max_radius)).collect();
    let rot = C64::from_polar(1.0, std::f64::consts::TAU * rng.random::<f64>());
    BlaschkeProduct::new(zeros, rot).expect("zeros drawn inside the disk")
}

/// `n` points in `|ζ| <= radius`, pairwise at least `min_sep` apart
/// (rejection sampling).
pub fn separated_points<R: Rng>(rng: &mut R, n: usize, radius: f64, min_sep: f64) -> Vec<C64> {
    let mut pts: Vec<C64> = Vec::with_capacity(n);
    while pts.len() < n {
        let z = disk_point(rng, radius);
        if pts.iter().all(|p| (p - z).norm() >= min_sep) {
            pts.push(z);
        }
    }
    pts
}
