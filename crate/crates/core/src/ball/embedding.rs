use serde::{Deserialize, Serialize};

use crate::poly::inv_sqrt2_pow;
use crate::{BiPoly, Error, Point2, Result, UniPoly, C64, COEFF_TOL, INV_SQRT2, SQRT2};

/// `φ(ζ) = (ζ/√2, ζ²/√2)`; lands on the sphere exactly when `|ζ| = 1`.
pub fn phi(z: C64) -> Point2 {
    [z * INV_SQRT2, z * z * INV_SQRT2]
}

/// `w₂ = z₂ − √2 z₁²`, the defining function of the embedded disk.
pub fn w2() -> BiPoly {
    BiPoly::from_terms([(0, 1, C64::new(1.0, 0.0)), (2, 0, C64::new(-SQRT2, 0.0))])
}

/// `g̃₂ = (2/3)(z₁² + √2 z₂)`, a norm-one extension of `ζ²`.
pub fn g2() -> BiPoly {
    BiPoly::from_terms([
        (2, 0, C64::new(2.0 / 3.0, 0.0)),
        (0, 1, C64::new(2.0 / 3.0 * SQRT2, 0.0)),
    ])
}

/// `g̃₃ = 2 z₁ z₂`, the norm-one extension of `ζ³`.
pub fn g3() -> BiPoly {
    BiPoly::monomial(1, 1, C64::new(2.0, 0.0))
}

/// `√2 z₁`, the cheapest extension of `ζ` (sup norm `√2`).
pub fn sqrt2_z1() -> BiPoly {
    BiPoly::monomial(1, 0, C64::new(SQRT2, 0.0))
}

/// `L f = ∂f/∂z₁ − √2 z₁ ∂f/∂z₂`, the derivation along the complex tangent
/// of the sphere at points of `φ(∂D)`.
pub fn l_derivation(f: &BiPoly) -> BiPoly {
    let shift = BiPoly::monomial(1, 0, C64::new(SQRT2, 0.0));
    &f.dz1() - &(&shift * &f.dz2())
}

/// `ζ ↦ f(φ(ζ))`, collected in powers of `ζ`.
pub fn restrict_to_disk(f: &BiPoly) -> UniPoly {
    let mut coeffs: Vec<C64> = Vec::new();
    for (p, q, c) in f.terms() {
        let k = (p + 2 * q) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, C64::new(0.0, 0.0));
        }
        coeffs[k] += c * inv_sqrt2_pow(p + q);
    }
    UniPoly::new(coeffs)
}

/// `g̃₂^a g̃₃^b` with `k = 2a + 3b` and `b` minimal; restricts to `ζ^k`.
pub fn extension_gk(k: u32) -> Result<BiPoly> {
    if k == 1 {
        return Err(Error::NoNormPreservingExtension);
    }
    let b = if k.is_multiple_of(2) { 0 } else { 1 };
    let a = (k - 3 * b) / 2;
    Ok(&g2().pow(a) * &g3().pow(b))
}

/// `f = g(√2 z₁) + w₂ (√2/3) h(√2 z₁) + w₂² H(z₁, z₂)` with `g = f∘φ` and
/// `g'(ζ) = ζ h(ζ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WDecomposition {
    pub g_part: UniPoly,
    pub h_part: UniPoly,
    /// `H` in the original `(z₁, z₂)` coordinates.
    pub h_remainder: BiPoly,
    /// Largest coefficient mismatch among the `w₂⁰` term, the `w₂¹` term
    /// and the reassembled polynomial.
    pub consistency_residual: f64,
}

impl WDecomposition {
    pub fn reassemble(&self) -> BiPoly {
        let w = w2();
        let g_lift = BiPoly::from_uni_z1(&self.g_part.dilate(C64::new(SQRT2, 0.0)));
        let h_lift = BiPoly::from_uni_z1(
            &self
                .h_part
                .dilate(C64::new(SQRT2, 0.0))
                .scale(C64::new(SQRT2 / 3.0, 0.0)),
        );
        let first = &g_lift + &(&w * &h_lift);
        &first + &(&(&w * &w) * &self.h_remainder)
    }
}

/// Expands a candidate extension in the coordinates `(w₁, w₂) = (z₁, z₂ − √2 z₁²)`.
///
/// Requires `g'(0) = 0` for `g = f∘φ`; otherwise no norm-one extension with
/// this restriction exists.
pub fn w_decompose(f: &BiPoly) -> Result<WDecomposition> {
    let g = restrict_to_disk(f);
    let g1 = g.coeff(1).norm();
    if g1 > COEFF_TOL {
        return Err(Error::DerivativeNotVanishingAtZero(g1));
    }
    // g'(ζ) = Σ (k+1) g_{k+1} ζ^k and g'(0) = 0, so h_k = (k+2) g_{k+2}.
    let h = UniPoly::new(
        (0..g.coeffs().len().saturating_sub(2))
            .map(|k| g.coeff(k + 2) * (k as f64 + 2.0))
            .collect(),
    );
    let (a, b, h1) = f.to_w_coords().split_by_w2();
    let root2 = C64::new(SQRT2, 0.0);
    let a_expected = g.dilate(root2);
    let b_expected = h.dilate(root2).scale(C64::new(SQRT2 / 3.0, 0.0));
    let mut dec = WDecomposition {
        g_part: g,
        h_part: h,
        h_remainder: h1.from_w_coords(),
        consistency_residual: 0.0,
    };
    dec.consistency_residual = a
        .max_diff(&a_expected)
        .max(b.max_diff(&b_expected))
        .max(dec.reassemble().max_diff(f));
    Ok(dec)
}
