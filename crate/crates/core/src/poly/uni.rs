use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Polynomial in one complex variable, coefficients in ascending degree.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient list and degree −1.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "UniRepr", into = "UniRepr")]
pub struct UniPoly {
    coeffs: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct UniRepr {
    uni: Vec<[f64; 2]>,
}

impl From<UniRepr> for UniPoly {
    fn from(r: UniRepr) -> Self {
        UniPoly::new(r.uni.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

impl From<UniPoly> for UniRepr {
    fn from(p: UniPoly) -> Self {
        UniRepr {
            uni: p.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c ζ^k`.
    pub fn monomial(k: usize, c: C64) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs)
    }

    /// Monic polynomial `∏ (ζ − r)`.
    pub fn from_roots(roots: &[C64]) -> Self {
        roots
            .iter()
            .fold(UniPoly::constant(C64::new(1.0, 0.0)), |acc, r| {
                &acc * &UniPoly::new(vec![-r, C64::new(1.0, 0.0)])
            })
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: C64) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `ζ ↦ p(λζ)`.
    pub fn dilate(&self, lambda: C64) -> UniPoly {
        let mut pow = C64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * pow);
            pow *= lambda;
        }
        UniPoly::new(out)
    }

    /// Drops coefficients of degree `> max_degree`.
    pub fn truncate(&self, max_degree: usize) -> UniPoly {
        UniPoly::new(self.coeffs.iter().take(max_degree + 1).copied().collect())
    }

    /// Sets coefficients with modulus at most `tol` to zero and re-trims.
    pub fn chop(&self, tol: f64) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .map(|&c| {
                    if c.norm() <= tol {
                        C64::new(0.0, 0.0)
                    } else {
                        c
                    }
                })
                .collect(),
        )
    }

    /// Largest coefficient deviation.
    pub fn max_diff(&self, other: &UniPoly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &UniPoly, tol: f64) -> bool {
        self.max_diff(other) <= tol
    }

    /// Roots as eigenvalues of the companion matrix.
    ///
    /// Leading coefficients with modulus below `1e-14 · max|c|` are treated as
    /// zero before building the matrix.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let p = self.chop(1e-14 * scale);
        let n = match p.degree() {
            d if d < 0 => return Err(Error::InvalidInput("roots of the zero polynomial".into())),
            0 => return Ok(Vec::new()),
            d => d as usize,
        };
        let lead = p.coeffs[n];
        let mut m = DMatrix::<C64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = C64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -p.coeffs[i] / lead;
        }
        let eig = m.eigenvalues().ok_or_else(|| {
            Error::Numeric("companion matrix eigenvalues did not converge".into())
        })?;
        // One Newton step per root against the original polynomial.
        let dp = p.derivative();
        Ok(eig
            .iter()
            .map(|&r| {
                let d = dp.eval(r);
                if d.norm() > 0.0 {
                    let step = p.eval(r) / d;
                    if step.norm() < 1e-6 * (1.0 + r.norm()) {
                        return r - step;
                    }
                }
                r
            })
            .collect())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn eval_examples() {
        let cube = UniPoly::monomial(3, c(1.0, 0.0));
        assert_eq!(cube.eval(c(0.5, 0.0)), c(0.125, 0.0));
        assert_eq!(UniPoly::zero().eval(c(0.3, -2.0)), c(0.0, 0.0));
        let lin = UniPoly::new(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(lin.eval(c(0.0, 1.0)), c(1.0, 1.0));
    }

    #[test]
    fn degree_and_trim() {
        assert_eq!(UniPoly::zero().degree(), -1);
        let p = UniPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), 0);
        assert_eq!(p.coeffs().len(), 1);
    }

    #[test]
    fn roots_recover_factors() {
        let rs = [c(0.5, 0.1), c(-0.2, 0.3), c(0.0, 0.0)];
        let p = UniPoly::from_roots(&rs).scale(c(2.0, -1.0));
        let mut found = p.roots().unwrap();
        assert_eq!(found.len(), 3);
        for r in rs {
            let (k, _) = found
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - r).norm().total_cmp(&(b.1 - r).norm()))
                .unwrap();
            assert!((found[k] - r).norm() < 1e-12);
            found.remove(k);
        }
    }

    #[test]
    fn serde_shape() {
        let p = UniPoly::new(vec![c(1.0, 0.0), c(0.0, -2.0)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"uni":[[1.0,0.0],[0.0,-2.0]]}"#);
        let back: UniPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
