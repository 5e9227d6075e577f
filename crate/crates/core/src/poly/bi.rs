use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{binomial, sqrt2_pow, UniPoly};
use crate::{Point2, C64};

/// Which variable a partial derivative acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Z1,
    Z2,
}

/// Polynomial in two complex variables, stored sparsely as
/// `(p, q) ↦ coefficient of z₁^p z₂^q`.
///
/// Exact zeros are never stored. Iteration order is lexicographic in `(p, q)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "BiRepr", into = "BiRepr")]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), C64>,
}

#[derive(Serialize, Deserialize)]
struct BiRepr {
    bi: Vec<(u32, u32, f64, f64)>,
}

impl From<BiRepr> for BiPoly {
    fn from(r: BiRepr) -> Self {
        BiPoly::from_terms(
            r.bi.into_iter()
                .map(|(p, q, re, im)| (p, q, C64::new(re, im))),
        )
    }
}

impl From<BiPoly> for BiRepr {
    fn from(f: BiPoly) -> Self {
        BiRepr {
            bi: f
                .terms
                .iter()
                .map(|(&(p, q), c)| (p, q, c.re, c.im))
                .collect(),
        }
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: C64) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        BiPoly::constant(C64::new(1.0, 0.0))
    }

    pub fn monomial(p: u32, q: u32, c: C64) -> Self {
        let mut f = BiPoly::zero();
        f.add_term(p, q, c);
        f
    }

    pub fn z1() -> Self {
        BiPoly::monomial(1, 0, C64::new(1.0, 0.0))
    }

    pub fn z2() -> Self {
        BiPoly::monomial(0, 1, C64::new(1.0, 0.0))
    }

    /// Sums repeated `(p, q)` entries.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, C64)>) -> Self {
        let mut f = BiPoly::zero();
        for (p, q, c) in terms {
            f.add_term(p, q, c);
        }
        f
    }

    /// The polynomial `u(z₁)` seen as a function of two variables.
    pub fn from_uni_z1(u: &UniPoly) -> Self {
        BiPoly::from_terms(
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(k, &c)| (k as u32, 0, c)),
        )
    }

    pub fn add_term(&mut self, p: u32, q: u32, c: C64) {
        let entry = self.terms.entry((p, q)).or_default();
        *entry += c;
        if *entry == C64::new(0.0, 0.0) {
            self.terms.remove(&(p, q));
        }
    }

    pub fn coeff(&self, p: u32, q: u32) -> C64 {
        self.terms.get(&(p, q)).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, C64)> + '_ {
        self.terms.iter().map(|(&(p, q), &c)| (p, q, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum of `p + q` over stored terms; −1 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|&(p, q)| i64::from(p + q))
            .max()
            .unwrap_or(-1)
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: &Point2) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (&(p, q), &c) in &self.terms {
            acc += c * z[0].powu(p) * z[1].powu(q);
        }
        acc
    }

    pub fn scale(&self, s: C64) -> BiPoly {
        BiPoly::from_terms(self.terms().map(|(p, q, c)| (p, q, c * s)))
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        (0..n).fold(BiPoly::one(), |acc, _| &acc * self)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, axis: Axis) -> BiPoly {
        BiPoly::from_terms(self.terms().filter_map(|(p, q, c)| match axis {
            Axis::Z1 if p > 0 => Some((p - 1, q, c * f64::from(p))),
            Axis::Z2 if q > 0 => Some((p, q - 1, c * f64::from(q))),
            _ => None,
        }))
    }

    pub fn dz1(&self) -> BiPoly {
        self.derivative(Axis::Z1)
    }

    pub fn dz2(&self) -> BiPoly {
        self.derivative(Axis::Z2)
    }

    /// `(w₁, w₂) ↦ f(w₁, w₂ + √2 w₁²)`: the coordinates in which the embedded
    /// disk becomes `{w₂ = 0}`.
    pub fn to_w_coords(&self) -> BiPoly {
        self.shear(1.0)
    }

    /// Inverse of [`BiPoly::to_w_coords`]: `(z₁, z₂) ↦ f(z₁, z₂ − √2 z₁²)`.
    pub fn from_w_coords(&self) -> BiPoly {
        self.shear(-1.0)
    }

    // z1^p z2^q -> w1^p (w2 + sign·√2 w1²)^q
    fn shear(&self, sign: f64) -> BiPoly {
        let mut out = BiPoly::zero();
        for (p, q, c) in self.terms() {
            for j in 0..=q {
                let k = q - j;
                let s = if k % 2 == 1 { sign } else { 1.0 };
                let factor = binomial(q, j) * sqrt2_pow(k) * s;
                out.add_term(p + 2 * k, j, c * factor);
            }
        }
        out
    }

    /// Splits `f₁(w₁, w₂) = A(w₁) + w₂ B(w₁) + w₂² H(w₁, w₂)`.
    pub fn split_by_w2(&self) -> (UniPoly, UniPoly, BiPoly) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut h = BiPoly::zero();
        for (p, q, c) in self.terms() {
            match q {
                0 => put(&mut a, p as usize, c),
                1 => put(&mut b, p as usize, c),
                _ => h.add_term(p, q - 2, c),
            }
        }
        (UniPoly::new(a), UniPoly::new(b), h)
    }

    /// Drops coefficients with modulus at most `tol`.
    pub fn chop(&self, tol: f64) -> BiPoly {
        BiPoly::from_terms(self.terms().filter(|(_, _, c)| c.norm() > tol))
    }

    /// Largest coefficient deviation.
    pub fn max_diff(&self, other: &BiPoly) -> f64 {
        (self - other).max_coeff_abs()
    }

    pub fn approx_eq(&self, other: &BiPoly, tol: f64) -> bool {
        self.max_diff(other) <= tol
    }
}

fn put(v: &mut Vec<C64>, k: usize, c: C64) {
    if v.len() <= k {
        v.resize(k + 1, C64::new(0.0, 0.0));
    }
    v[k] += c;
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (p, q, c) in rhs.terms() {
            out.add_term(p, q, c);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (p, q, c) in rhs.terms() {
            out.add_term(p, q, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (p1, q1, c1) in self.terms() {
            for (p2, q2, c2) in rhs.terms() {
                out.add_term(p1 + p2, q1 + q2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}
