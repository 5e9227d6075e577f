use serde::{Deserialize, Serialize};

use super::UniPoly;
use crate::{Error, Result, C64};

/// The involutive disk automorphism `φ_α(ζ) = (α − ζ)/(1 − ᾱζ)`, which
/// exchanges `0` and `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    alpha: C64,
}

impl MoebiusMap {
    pub fn new(alpha: C64) -> Result<Self> {
        if !(alpha.norm() < 1.0) {
            return Err(Error::InvalidInput(format!(
                "Möbius parameter must lie in the open disk, |α| = {}",
                alpha.norm()
            )));
        }
        Ok(MoebiusMap { alpha })
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn eval(&self, z: C64) -> C64 {
        (self.alpha - z) / (C64::new(1.0, 0.0) - self.alpha.conj() * z)
    }

    pub fn derivative(&self, z: C64) -> C64 {
        let d = C64::new(1.0, 0.0) - self.alpha.conj() * z;
        -(1.0 - self.alpha.norm_sqr()) / (d * d)
    }
}

/// Finite Blaschke product `B(ζ) = λ ∏ (z_k − ζ)/(1 − z̄_k ζ)` with `|λ| = 1`.
///
/// The degree is the number of zeros; `|B| = 1` on the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    zeros: Vec<C64>,
    rotation: C64,
}

/// Truncated Taylor expansion of a Blaschke product together with a rigorous
/// bound on the omitted tail over the closed unit disk.
#[derive(Debug, Clone)]
pub struct SeriesTruncation {
    pub series: UniPoly,
    pub tail_bound: f64,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<C64>, rotation: C64) -> Result<Self> {
        if let Some(z) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
            return Err(Error::InvalidInput(format!(
                "Blaschke zero {z} outside the open disk"
            )));
        }
        if (rotation.norm() - 1.0).abs() > 1e-14 {
            return Err(Error::InvalidInput(format!(
                "Blaschke rotation must be unimodular, |λ| = {}",
                rotation.norm()
            )));
        }
        Ok(BlaschkeProduct { zeros, rotation })
    }

    /// Rotation normalized onto the unit circle before validation.
    pub fn with_normalized_rotation(zeros: Vec<C64>, rotation: C64) -> Result<Self> {
        let r = rotation.norm();
        if r == 0.0 || !r.is_finite() {
            return Err(Error::InvalidInput("rotation must be nonzero".into()));
        }
        BlaschkeProduct::new(zeros, rotation / r)
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    pub fn rotation(&self) -> C64 {
        self.rotation
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn factors(&self) -> impl Iterator<Item = MoebiusMap> + '_ {
        self.zeros.iter().map(|&alpha| MoebiusMap { alpha })
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.factors().fold(self.rotation, |acc, m| acc * m.eval(z))
    }

    pub fn derivative(&self, z: C64) -> C64 {
        let vals: Vec<C64> = self.factors().map(|m| m.eval(z)).collect();
        let mut total = C64::new(0.0, 0.0);
        for (k, m) in self.factors().enumerate() {
            let mut term = m.derivative(z);
            for (j, v) in vals.iter().enumerate() {
                if j != k {
                    term *= v;
                }
            }
            total += term;
        }
        self.rotation * total
    }

    /// `|B'(e^{iθ})| = Σ (1 − |z_k|²)/|e^{iθ} − z_k|²`, valid on the circle.
    pub fn boundary_derivative_modulus(&self, theta: f64) -> f64 {
        let e = C64::from_polar(1.0, theta);
        self.zeros
            .iter()
            .map(|z| (1.0 - z.norm_sqr()) / (e - z).norm_sqr())
            .sum()
    }

    /// Taylor polynomial of degree `degree` around 0.
    ///
    /// Each factor expands as `α − (1 − |α|²) Σ_{n≥1} ᾱ^{n−1} ζ^n`. The tail
    /// bound is Cauchy's estimate on a circle of radius `ρ > 1` inside the
    /// region of analyticity, minimized over a fixed set of radii.
    pub fn power_series(&self, degree: usize) -> SeriesTruncation {
        let mut series = UniPoly::constant(self.rotation);
        for &alpha in &self.zeros {
            let mut f = vec![C64::new(0.0, 0.0); degree + 1];
            f[0] = alpha;
            let mut pow = C64::new(1.0, 0.0);
            let k = 1.0 - alpha.norm_sqr();
            for c in f.iter_mut().skip(1) {
                *c = -pow * k;
                pow *= alpha.conj();
            }
            series = (&series * &UniPoly::new(f)).truncate(degree);
        }
        SeriesTruncation {
            tail_bound: self.tail_bound(degree),
            series,
        }
    }

    fn tail_bound(&self, degree: usize) -> f64 {
        let rmax = self.zeros.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if rmax == 0.0 {
            // rotation · ζ^k is its own Taylor polynomial once degree >= k.
            return if self.degree() <= degree {
                0.0
            } else {
                f64::INFINITY
            };
        }
        let radius_limit = 1.0 / rmax;
        let mut best = f64::INFINITY;
        for i in 1..200 {
            let rho = 1.0 + (radius_limit - 1.0) * f64::from(i) / 200.0;
            // |φ_α| <= (|α| + ρ)/(1 − |α|ρ) on |ζ| = ρ.
            let m: f64 = self
                .zeros
                .iter()
                .map(|z| (z.norm() + rho) / (1.0 - z.norm() * rho))
                .product();
            let n = degree as f64 + 1.0;
            let bound = m * rho.powf(-n) / (1.0 - 1.0 / rho);
            if bound < best {
                best = bound;
            }
        }
        best
    }

    /// Numerator and denominator polynomials with `B = p/q`.
    pub fn to_rational(&self) -> (UniPoly, UniPoly) {
        let one = C64::new(1.0, 0.0);
        let mut p = UniPoly::constant(self.rotation);
        let mut q = UniPoly::constant(one);
        for &a in &self.zeros {
            p = &p * &UniPoly::new(vec![a, -one]);
            q = &q * &UniPoly::new(vec![one, -a.conj()]);
        }
        (p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn moebius_exchange_and_involution() {
        let m = MoebiusMap::new(c(0.5, 0.0)).unwrap();
        assert!(m.eval(c(0.5, 0.0)).norm() < 1e-16);
        assert!((m.eval(c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-16);
        let z = c(0.3, 0.1);
        assert!((m.eval(m.eval(z)) - z).norm() < 1e-15);
        assert!(MoebiusMap::new(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn blaschke_inner_on_circle() {
        let b = BlaschkeProduct::new(vec![c(0.0, 0.0)], c(1.0, 0.0)).unwrap();
        for k in 0..16 {
            let e = C64::from_polar(1.0, f64::from(k) * 0.4);
            assert!((b.eval(e).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let b = BlaschkeProduct::new(vec![c(0.3, -0.2), c(-0.5, 0.4)], C64::from_polar(1.0, 0.7))
            .unwrap();
        let z = c(0.1, 0.25);
        let h = 1e-6;
        let fd = (b.eval(z + h) - b.eval(z - h)) / (2.0 * h);
        assert!((fd - b.derivative(z)).norm() < 1e-8);
        let theta: f64 = 1.3;
        let e = C64::from_polar(1.0, theta);
        assert!((b.derivative(e).norm() - b.boundary_derivative_modulus(theta)).abs() < 1e-12);
    }

    #[test]
    fn power_series_and_tail() {
        let b = BlaschkeProduct::new(vec![c(0.3, 0.1), c(0.0, -0.2)], c(0.0, 1.0)).unwrap();
        let t = b.power_series(40);
        assert!(t.tail_bound < 1e-12, "tail {}", t.tail_bound);
        for k in 0..12 {
            let z = C64::from_polar(1.0, f64::from(k) * 0.5);
            assert!((t.series.eval(z) - b.eval(z)).norm() <= t.tail_bound + 1e-14);
        }
        let big = BlaschkeProduct::new(vec![c(0.95, 0.0)], c(1.0, 0.0)).unwrap();
        assert!(big.power_series(40).tail_bound > 1e-12);
    }

    #[test]
    fn rational_form_agrees() {
        let b = BlaschkeProduct::new(vec![c(0.3, 0.1), c(-0.6, 0.2)], c(0.6, 0.8)).unwrap();
        let (p, q) = b.to_rational();
        let z = c(0.2, -0.7);
        assert!((p.eval(z) / q.eval(z) - b.eval(z)).norm() < 1e-14);
    }
}
