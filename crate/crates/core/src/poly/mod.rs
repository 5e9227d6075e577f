//! Complex polynomial algebra and disk automorphisms.
//!
//! Coefficients are plain `f64` complex numbers. Equality is checked up to a
//! per-coefficient absolute tolerance ([`crate::COEFF_TOL`] by default).

mod bi;
mod moebius;
mod uni;

pub use bi::{Axis, BiPoly};
pub use moebius::{BlaschkeProduct, MoebiusMap, SeriesTruncation};
pub use uni::UniPoly;

use crate::{INV_SQRT2, SQRT2};

/// `√2^k` without accumulating rounding: exact powers of two times at most
/// one factor of `√2`.
pub fn sqrt2_pow(k: u32) -> f64 {
    let base = 2f64.powi((k / 2) as i32);
    if k % 2 == 1 {
        base * SQRT2
    } else {
        base
    }
}

/// `(1/√2)^k`, same construction as [`sqrt2_pow`].
pub fn inv_sqrt2_pow(k: u32) -> f64 {
    let base = 0.5f64.powi((k / 2) as i32);
    if k % 2 == 1 {
        base * INV_SQRT2
    } else {
        base
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * f64::from(n - i) / f64::from(i + 1);
    }
    acc.round()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_powers() {
        assert_eq!(sqrt2_pow(0), 1.0);
        assert_eq!(sqrt2_pow(2), 2.0);
        assert_eq!(sqrt2_pow(3), 2.0 * SQRT2);
        assert_eq!(inv_sqrt2_pow(4), 0.25);
        assert!((sqrt2_pow(5) * inv_sqrt2_pow(5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70.0);
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}
