use nalgebra::{DMatrix, DVector};

use super::space::TruncatedH2;
use crate::{BiPoly, Error, Point2, Result, C64};

/// `T_f h = P(f̄ h)`, the compressed adjoint of multiplication by `f`, so
/// that `⟨T_f h, k⟩ = ⟨h, f k⟩` for `h, k` in the space.
///
/// `T_f` is complex linear in `h` and conjugate linear in `f`. Kernels are
/// approximate eigenvectors: `T_f k_b ≈ conj(f(b)) k_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierAdjoint {
    pub f: BiPoly,
    /// Matrix in the orthonormal basis of the quotient.
    pub matrix: DMatrix<C64>,
    /// Real form `[[Re, −Im], [Im, Re]]` acting on stacked real and imaginary parts.
    pub realified: DMatrix<f64>,
    /// Largest singular value of the realified matrix.
    pub norm: f64,
}

impl MultiplierAdjoint {
    pub fn apply(&self, coords: &DVector<C64>) -> DVector<C64> {
        &self.matrix * coords
    }
}

pub fn multiplier_adjoint(f: &BiPoly, space: &TruncatedH2) -> MultiplierAdjoint {
    let u = space.orthonormal_samples();
    let fbar: Vec<C64> = space
        .measure()
        .nodes()
        .iter()
        .map(|x| f.eval(x).conj())
        .collect();
    let mut scaled = u.clone();
    for (k, mut row) in scaled.row_iter_mut().enumerate() {
        row *= fbar[k];
    }
    let matrix = u.adjoint() * scaled;
    let realified = realify(&matrix);
    let norm = largest_singular_value(&realified);
    MultiplierAdjoint {
        f: f.clone(),
        matrix,
        realified,
        norm,
    }
}

fn realify(a: &DMatrix<C64>) -> DMatrix<f64> {
    let (n, m) = a.shape();
    DMatrix::from_fn(2 * n, 2 * m, |i, j| {
        let z = a[(i % n, j % m)];
        match (i < n, j < m) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

fn largest_singular_value(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// `‖T_f k_b − conj(f(b)) k_b‖ / ‖k_b‖`.
pub fn kernel_eigen_residual(f: &BiPoly, b: &Point2, space: &TruncatedH2) -> Result<f64> {
    let k = space.kernel_at(b)?;
    let y = DVector::from_vec(k.coords);
    let t = multiplier_adjoint(f, space);
    Ok((t.apply(&y) - &y * f.eval(b).conj()).norm() / y.norm())
}

/// Norm of `T_f` compressed to the span of the kernels at `points`.
pub fn restricted_norm(points: &[Point2], f: &BiPoly, space: &TruncatedH2) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::InvalidInput("no points".into()));
    }
    let cols = points
        .iter()
        .map(|b| space.kernel_at(b).map(|k| DVector::from_vec(k.coords)))
        .collect::<Result<Vec<_>>>()?;
    let y = DMatrix::from_columns(&cols);
    let svd = y.svd(true, false);
    let u = svd
        .u
        .ok_or_else(|| Error::Numeric("singular value decomposition failed".into()))?;
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let r = svd
        .singular_values
        .iter()
        .filter(|s| **s > 1e-12 * smax)
        .count();
    let q = u.columns(0, r).into_owned();
    let t = multiplier_adjoint(f, space);
    let compressed = q.adjoint() * &t.matrix * &q;
    Ok(largest_singular_value(&realify(&compressed)))
}
