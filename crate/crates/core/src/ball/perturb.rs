use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::sphere::{sphere_sup, ScanOptions};
use crate::disk::{DiskProblem, ExtremalSolution};
use crate::{BiPoly, Error, Result, C64};

/// Relative slack of an extremal disk solution `f₀ = m B` against `m`.
///
/// `gamma = inf_{D} (m − |f₀|)/(1 − |ζ|²)`, estimated on a polar grid and on
/// its boundary limit `m |B'(e^{iθ})|/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationGap {
    pub gamma: f64,
    pub interior_min: f64,
    pub boundary_limit_min: f64,
    pub grid_n: usize,
}

const INTERIOR_RADIUS: f64 = 1.0 - 1e-3;

pub fn perturbation_gap(sol: &ExtremalSolution, grid_n: usize) -> Result<PerturbationGap> {
    if grid_n < 2 {
        return Err(Error::InvalidInput(format!(
            "grid size {grid_n} is below 2"
        )));
    }
    if sol.blaschke.degree() == 0 {
        return Err(Error::NonpositiveGap(0.0));
    }
    let m = sol.m;
    let mut interior_min = f64::INFINITY;
    for i in 0..=grid_n {
        let r = INTERIOR_RADIUS * i as f64 / grid_n as f64;
        for j in 0..grid_n {
            let z = C64::from_polar(r, TAU * j as f64 / grid_n as f64);
            let ratio = (m - sol.eval(z).norm()) / (1.0 - r * r);
            interior_min = interior_min.min(ratio);
        }
    }
    let boundary_limit_min = (0..grid_n)
        .map(|j| {
            m * sol
                .blaschke
                .boundary_derivative_modulus(TAU * j as f64 / grid_n as f64)
                / 2.0
        })
        .fold(f64::INFINITY, f64::min);
    let gamma = interior_min.min(boundary_limit_min);
    if gamma <= 0.0 {
        return Err(Error::NonpositiveGap(gamma));
    }
    Ok(PerturbationGap {
        gamma,
        interior_min,
        boundary_limit_min,
        grid_n,
    })
}

/// A second extension of the same data: `f₀(z₁) + γ z₂²` has the same values
/// at `(a_j, 0)` and sup norm at most `m` over the sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonuniquenessWitness {
    pub poly: BiPoly,
    pub series_tail: f64,
    pub interp_residual: f64,
    pub sphere_sup: f64,
    pub sup_error_bound: f64,
}

const SERIES_DEGREE: usize = 40;
const MAX_TAIL: f64 = 1e-12;

pub fn nonuniqueness_witness(
    problem: &DiskProblem,
    sol: &ExtremalSolution,
    gap: &PerturbationGap,
    grid_n: usize,
) -> Result<NonuniquenessWitness> {
    let trunc = sol.blaschke.power_series(SERIES_DEGREE);
    let series_tail = trunc.tail_bound * sol.m;
    if series_tail >= MAX_TAIL {
        return Err(Error::TruncationTooLarge(series_tail));
    }
    let f0 = BiPoly::from_uni_z1(&trunc.series.scale(C64::new(sol.m, 0.0)));
    let poly = &f0 + &BiPoly::monomial(0, 2, C64::new(gap.gamma, 0.0));
    let interp_residual = problem
        .points()
        .iter()
        .zip(problem.values())
        .map(|(a, v)| (poly.eval(&[*a, C64::new(0.0, 0.0)]) - v).norm())
        .fold(0.0, f64::max);
    if interp_residual > 1e-8 * sol.m.max(1.0) {
        return Err(Error::VerificationFailed(format!(
            "witness misses the data by {interp_residual:e}"
        )));
    }
    let scan = sphere_sup(
        &poly,
        ScanOptions {
            grid_n,
            polish: true,
        },
    )?;
    if scan.sup_norm > sol.m + 1e-6 {
        return Err(Error::VerificationFailed(format!(
            "witness sup {} exceeds {}",
            scan.sup_norm, sol.m
        )));
    }
    Ok(NonuniquenessWitness {
        poly,
        series_tail,
        interp_residual,
        sphere_sup: scan.sup_norm,
        sup_error_bound: scan.sup_error_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::solve_extremal;
    use crate::{c, BlaschkeProduct};

    fn solution(zeros: Vec<C64>, m: f64) -> ExtremalSolution {
        ExtremalSolution {
            m,
            blaschke: BlaschkeProduct::new(zeros, c(1.0, 0.0)).unwrap(),
            interp_residual: 0.0,
            boundary_flatness: 0.0,
        }
    }

    #[test]
    fn square_has_unit_gap() {
        let g = perturbation_gap(&solution(vec![c(0.0, 0.0); 2], 1.0), 128).unwrap();
        assert!((g.gamma - 1.0).abs() < 1e-9);
        assert!((g.boundary_limit_min - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_has_half_gap() {
        let g = perturbation_gap(&solution(vec![c(0.0, 0.0)], 1.0), 64).unwrap();
        assert!((g.gamma - 0.5).abs() < 1e-9);
    }

    #[test]
    fn constant_rejected() {
        let e = perturbation_gap(&solution(vec![], 1.0), 64).unwrap_err();
        assert!(matches!(e, Error::NonpositiveGap(_)));
    }

    #[test]
    fn witness_for_three_points() {
        let pts = vec![c(0.0, 0.0), c(0.4, 0.1), c(-0.2, 0.5)];
        let b = BlaschkeProduct::new(vec![c(0.2, 0.1), c(-0.1, -0.25)], c(0.0, 1.0)).unwrap();
        let vals: Vec<C64> = pts.iter().map(|z| b.eval(*z) * 0.7).collect();
        let problem = DiskProblem::new(pts, vals).unwrap();
        let sol = solve_extremal(&problem).unwrap();
        let gap = perturbation_gap(&sol, 128).unwrap();
        let w = nonuniqueness_witness(&problem, &sol, &gap, 64).unwrap();
        assert!(w.interp_residual < 1e-8);
        assert!(w.sphere_sup <= sol.m + 1e-6);
        assert!(w.poly.coeff(0, 2).norm() > 0.0);
    }

    #[test]
    fn slow_series_rejected() {
        let pts = vec![c(0.0, 0.0), c(0.5, 0.0)];
        let b = BlaschkeProduct::new(vec![c(0.9, 0.0)], c(1.0, 0.0)).unwrap();
        let vals: Vec<C64> = pts.iter().map(|z| b.eval(*z)).collect();
        let problem = DiskProblem::new(pts, vals).unwrap();
        let sol = solve_extremal(&problem).unwrap();
        let gap = perturbation_gap(&sol, 64).unwrap();
        let e = nonuniqueness_witness(&problem, &sol, &gap, 32).unwrap_err();
        assert!(matches!(e, Error::TruncationTooLarge(_)));
    }
}
