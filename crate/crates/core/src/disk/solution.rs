use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::pick::{
    minimal_norm, pick_matrix, scaled_pick_matrix, smallest_eigenpair, DEFAULT_REL_TOL,
};
use super::DiskProblem;
use crate::{BlaschkeProduct, Error, Result, UniPoly, C64};

/// Default relative step below `m` for the infeasibility side of a certificate.
pub const DEFAULT_DELTA: f64 = 1e-6;

/// Eigenvalues of the scaled Pick matrix below this fraction of the largest
/// count toward its nullity.
const NULLITY_REL_TOL: f64 = 1e-10;

/// Boundary samples used for flatness checks.
const BOUNDARY_SAMPLES: usize = 256;

/// Two-sided numeric certificate that `m` is the extremal norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickCertificate {
    pub m: f64,
    /// Unit null vector of the Pick matrix at `v/m`, as `[re, im]` pairs.
    pub null_vector: Vec<[f64; 2]>,
    /// Smallest eigenvalue of the Pick matrix at `v/((1 − δ)m)`; negative.
    pub slack_low: f64,
    /// Smallest eigenvalue of the Pick matrix at `v/m`; zero up to `psd_tol`.
    pub slack_at: f64,
    pub psd_tol: f64,
    pub delta: f64,
    /// True for `v ≡ 0`, where no matrix is formed.
    pub trivial: bool,
}

/// `m · B` together with its verification residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalSolution {
    pub m: f64,
    pub blaschke: BlaschkeProduct,
    /// `max_j |m B(a_j) − v_j|`.
    pub interp_residual: f64,
    /// `max_θ | |m B(e^{iθ})| − m |`.
    pub boundary_flatness: f64,
}

impl ExtremalSolution {
    pub fn eval(&self, z: C64) -> C64 {
        self.blaschke.eval(z) * self.m
    }
}

fn residuals(problem: &DiskProblem, m: f64, b: &BlaschkeProduct) -> (f64, f64) {
    let interp = problem
        .points()
        .iter()
        .zip(problem.values())
        .map(|(&a, &v)| (b.eval(a) * m - v).norm())
        .fold(0.0, f64::max);
    let flat = (0..BOUNDARY_SAMPLES)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / BOUNDARY_SAMPLES as f64;
            ((b.eval(C64::from_polar(1.0, t)) * m).norm() - m).abs()
        })
        .fold(0.0, f64::max);
    (interp, flat)
}

fn verify(problem: &DiskProblem, m: f64, blaschke: BlaschkeProduct) -> Result<ExtremalSolution> {
    let (interp_residual, boundary_flatness) = residuals(problem, m, &blaschke);
    if !(interp_residual < 1e-8 * m.max(1.0)) {
        return Err(Error::VerificationFailed(format!(
            "interpolation residual {interp_residual:e}"
        )));
    }
    if !(boundary_flatness < 1e-8 * m) {
        return Err(Error::VerificationFailed(format!(
            "boundary flatness {boundary_flatness:e}"
        )));
    }
    Ok(ExtremalSolution {
        m,
        blaschke,
        interp_residual,
        boundary_flatness,
    })
}

/// Builds the extremal function `m · B` from the Pick null vector.
///
/// With `P c = 0` at `w = v/m`, the function
/// `f(z) = m · Σ c_j/(1 − ā_j z) / Σ c_j w̄_j/(1 − ā_j z)` interpolates and is
/// inner up to the factor `m`. Clearing denominators gives `f = m · p/q`; the
/// zeros of `p` are the Blaschke zeros.
pub fn extremal_solution(problem: &DiskProblem) -> Result<ExtremalSolution> {
    let m = minimal_norm(problem, DEFAULT_REL_TOL)?;
    if m == 0.0 {
        return Err(Error::InvalidInput(
            "the zero data have no Blaschke representative".into(),
        ));
    }
    if problem.len() == 1 {
        let b = BlaschkeProduct::with_normalized_rotation(Vec::new(), problem.values()[0])?;
        return verify(problem, m, b);
    }
    let a = problem.points();
    let w: Vec<C64> = problem.values().iter().map(|v| v / m).collect();
    let scaled = scaled_pick_matrix(a, &w);
    let eig = scaled.clone().symmetric_eigen();
    let lmax = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, l| acc.max(l.abs()));
    let nullity = eig
        .eigenvalues
        .iter()
        .filter(|&&l| l <= NULLITY_REL_TOL * lmax)
        .count();
    if nullity > 1 {
        return Err(Error::DegenerateNullspace(nullity));
    }
    let k = eig.eigenvalues.imin();
    let x = eig.eigenvectors.column(k);
    let c: Vec<C64> = a
        .iter()
        .zip(x.iter())
        .map(|(ai, xi)| xi * (1.0 - ai.norm_sqr()).sqrt())
        .collect();

    let one = C64::new(1.0, 0.0);
    let mut p = UniPoly::zero();
    let mut q = UniPoly::zero();
    for j in 0..a.len() {
        let others = a
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .fold(UniPoly::constant(one), |acc, (_, ak)| {
                &acc * &UniPoly::new(vec![one, -ak.conj()])
            });
        p = &p + &others.scale(c[j]);
        q = &q + &others.scale(c[j] * w[j].conj());
    }

    let roots = p.roots()?;
    let mut zeros = Vec::with_capacity(roots.len());
    for r in roots {
        let rn = r.norm();
        if rn > 1.0 + 1e-8 {
            return Err(Error::VerificationFailed(format!(
                "numerator root {r} lies outside the disk"
            )));
        }
        zeros.push(if rn >= 1.0 { r / rn * (1.0 - 1e-15) } else { r });
    }
    let trial = BlaschkeProduct::new(zeros.clone(), one)?;
    let mut rot = C64::new(0.0, 0.0);
    for k in 0..8 {
        let e = C64::from_polar(1.0, std::f64::consts::TAU * (k as f64 + 0.5) / 8.0);
        let ratio = p.eval(e) / q.eval(e) / trial.eval(e);
        rot += ratio / ratio.norm();
    }
    let blaschke = BlaschkeProduct::with_normalized_rotation(zeros, rot)?;
    verify(problem, m, polish(problem, m, blaschke))
}

/// Gauss-Newton refinement of zeros and rotation angle against the data
/// `m B(a_j) = v_j`. Only steps that reduce the residual are kept.
fn polish(problem: &DiskProblem, m: f64, start: BlaschkeProduct) -> BlaschkeProduct {
    let a = problem.points();
    let v = problem.values();
    let n = a.len();
    let deg = start.degree();
    let cols = 2 * deg + 1;
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let cost = |b: &BlaschkeProduct| (residuals(problem, m, b)).0;

    let mut best = start;
    let mut best_cost = cost(&best);
    for _ in 0..20 {
        if best_cost < 1e-14 * m.max(1.0) {
            break;
        }
        let zeros = best.zeros().to_vec();
        let mut jac = nalgebra::DMatrix::<f64>::zeros(2 * n, cols);
        let mut rhs = nalgebra::DVector::<f64>::zeros(2 * n);
        for j in 0..n {
            let f = best.eval(a[j]) * m;
            let r = f - v[j];
            rhs[2 * j] = -r.re;
            rhs[2 * j + 1] = -r.im;
            for (k, &z) in zeros.iter().enumerate() {
                let den = one - z.conj() * a[j];
                let phi = (z - a[j]) / den;
                if phi.norm() == 0.0 {
                    continue;
                }
                let d_z = one / den;
                let d_zbar = (z - a[j]) * a[j] / (den * den);
                let dx = f / phi * (d_z + d_zbar);
                let dy = f / phi * i * (d_z - d_zbar);
                jac[(2 * j, 2 * k)] = dx.re;
                jac[(2 * j + 1, 2 * k)] = dx.im;
                jac[(2 * j, 2 * k + 1)] = dy.re;
                jac[(2 * j + 1, 2 * k + 1)] = dy.im;
            }
            let dt = f * i;
            jac[(2 * j, cols - 1)] = dt.re;
            jac[(2 * j + 1, cols - 1)] = dt.im;
        }
        let Ok(step) = jac.svd(true, true).solve(&rhs, 1e-14) else {
            break;
        };
        let new_zeros: Vec<C64> = zeros
            .iter()
            .enumerate()
            .map(|(k, z)| z + C64::new(step[2 * k], step[2 * k + 1]))
            .collect();
        let rot = best.rotation() * C64::from_polar(1.0, step[cols - 1]);
        let Ok(cand) = BlaschkeProduct::with_normalized_rotation(new_zeros, rot) else {
            break;
        };
        let c = cost(&cand);
        if c < best_cost {
            best = cand;
            best_cost = c;
        } else {
            break;
        }
    }
    best
}

/// [`extremal_solution`] with the degenerate case handled: while the Pick
/// nullity exceeds one, the last point is dropped and the smaller problem
/// solved. The returned residuals are measured on the full data.
pub fn solve_extremal(problem: &DiskProblem) -> Result<ExtremalSolution> {
    let mut n = problem.len();
    loop {
        let sub = problem.subproblem(&(0..n).collect::<Vec<_>>())?;
        match extremal_solution(&sub) {
            Ok(sol) => return verify(problem, sol.m, sol.blaschke),
            Err(Error::DegenerateNullspace(_)) if n > 1 => n -= 1,
            Err(e) => return Err(e),
        }
    }
}

fn to_pairs(v: &DVector<C64>) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

/// Checks both sides of the extremal norm: the Pick matrix at `v/m` is
/// semidefinite within `psd_tol = 1e-10 · trace`, and at `v/((1 − δ)m)` it
/// has a negative eigenvalue.
pub fn extremality_certificate(
    problem: &DiskProblem,
    m: f64,
    delta: f64,
) -> Result<PickCertificate> {
    let n = problem.len();
    if problem.max_abs_value() == 0.0 {
        let mut e1 = vec![[0.0, 0.0]; n];
        e1[0] = [1.0, 0.0];
        return Ok(PickCertificate {
            m: 0.0,
            null_vector: e1,
            slack_low: 0.0,
            slack_at: 0.0,
            psd_tol: 0.0,
            delta,
            trivial: true,
        });
    }
    if !(m > 0.0) {
        return Err(Error::CertificateFailed(format!(
            "nonzero data need m > 0, got {m}"
        )));
    }
    let at = |rho: f64| {
        let w: Vec<C64> = problem.values().iter().map(|v| v / rho).collect();
        pick_matrix(problem.points(), &w)
    };
    let p_at = at(m);
    let psd_tol = 1e-10 * (0..n).map(|i| p_at[(i, i)].re).sum::<f64>().abs();
    let (slack_at, null_vector) = smallest_eigenpair(&p_at);
    let (slack_low, _) = smallest_eigenpair(&at((1.0 - delta) * m));
    if slack_at < -psd_tol || (n > 1 && slack_at > psd_tol) {
        return Err(Error::CertificateFailed(format!(
            "smallest eigenvalue at m is {slack_at:e}, tolerance {psd_tol:e}"
        )));
    }
    if !(slack_low < 0.0) {
        return Err(Error::CertificateFailed(format!(
            "Pick matrix still semidefinite below m (eigenvalue {slack_low:e})"
        )));
    }
    Ok(PickCertificate {
        m,
        null_vector: to_pairs(&null_vector),
        slack_low,
        slack_at,
        psd_tol,
        delta,
        trivial: false,
    })
}
