use nalgebra::{DMatrix, DVector};

use super::DiskProblem;
use crate::{Error, Result, C64};

/// Default relative tolerance of the norm bisection.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Pivot tolerance factor: pivots below `PSD_TOL_FACTOR · trace` count as zero.
const PSD_TOL_FACTOR: f64 = 1e-13;

/// `P_ij = (1 − w_i w̄_j) / (1 − a_i ā_j)`.
pub fn pick_matrix(points: &[C64], w: &[C64]) -> DMatrix<C64> {
    let n = points.len();
    let one = C64::new(1.0, 0.0);
    DMatrix::from_fn(n, n, |i, j| {
        (one - w[i] * w[j].conj()) / (one - points[i] * points[j].conj())
    })
}

/// The Pick matrix congruent-scaled by `diag(√(1 − |a_i|²))`.
///
/// Congruence by a positive diagonal preserves semidefiniteness and nullity
/// while bringing the diagonal of the kernel part to 1.
pub fn scaled_pick_matrix(points: &[C64], w: &[C64]) -> DMatrix<C64> {
    let d: Vec<f64> = points.iter().map(|a| (1.0 - a.norm_sqr()).sqrt()).collect();
    let mut p = pick_matrix(points, w);
    for i in 0..p.nrows() {
        for j in 0..p.ncols() {
            p[(i, j)] *= d[i] * d[j];
        }
    }
    p
}

fn trace_re(m: &DMatrix<C64>) -> f64 {
    (0..m.nrows()).map(|i| m[(i, i)].re).sum()
}

/// Semidefiniteness by pivoted Cholesky elimination.
///
/// Pivots at most `tol = 1e-13 · |trace|` end the elimination; the remaining
/// block is then accepted when it is diagonally dominant up to `tol` per row.
pub fn is_psd(m: &DMatrix<C64>) -> bool {
    let tol = PSD_TOL_FACTOR * trace_re(m).abs().max(f64::MIN_POSITIVE);
    let mut s = m.clone();
    let mut active: Vec<usize> = (0..s.nrows()).collect();
    while !active.is_empty() {
        let (pos, &k) = active
            .iter()
            .enumerate()
            .max_by(|a, b| s[(*a.1, *a.1)].re.total_cmp(&s[(*b.1, *b.1)].re))
            .expect("nonempty");
        let d = s[(k, k)].re;
        if d <= tol {
            let r = active.len() as f64;
            return active.iter().all(|&i| {
                let off: f64 = active
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| s[(i, j)].norm())
                    .sum();
                s[(i, i)].re - off >= -r * tol
            });
        }
        active.swap_remove(pos);
        for &i in &active {
            let lik = s[(i, k)] / d;
            for &j in &active {
                let skj = s[(k, j)];
                s[(i, j)] -= lik * skj;
            }
        }
    }
    true
}

/// Smallest eigenvalue and a unit eigenvector of a Hermitian matrix.
pub fn smallest_eigenpair(m: &DMatrix<C64>) -> (f64, DVector<C64>) {
    let eig = m.clone().symmetric_eigen();
    let k = eig.eigenvalues.imin();
    let v = eig.eigenvectors.column(k).into_owned();
    let norm = v.norm();
    (eig.eigenvalues[k], v / C64::new(norm, 0.0))
}

fn feasible(problem: &DiskProblem, rho: f64) -> bool {
    let w: Vec<C64> = problem.values().iter().map(|v| v / rho).collect();
    if w.iter().any(|x| x.norm() > 1.0) {
        return false;
    }
    is_psd(&scaled_pick_matrix(problem.points(), &w))
}

/// Extremal norm of the problem by bisection on `ρ`, with the PSD test of
/// the Pick matrix of `v/ρ` as oracle.
///
/// Returns the feasible end of the final bracket, so the result overestimates
/// the true norm by at most `rel_tol` relative.
pub fn minimal_norm(problem: &DiskProblem, rel_tol: f64) -> Result<f64> {
    let vmax = problem.max_abs_value();
    if problem.len() == 1 || vmax == 0.0 {
        return Ok(vmax);
    }
    let mut lo = vmax * 1e-3;
    let mut hi = vmax;
    let mut doublings = 0;
    while !feasible(problem, hi) {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::Numeric("no feasible upper bracket found".into()));
        }
    }
    while hi - lo > rel_tol * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(problem, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
