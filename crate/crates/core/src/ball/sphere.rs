use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::embedding::{phi, restrict_to_disk};
use crate::{BiPoly, Error, Point2, Result, UniPoly, C64};

pub const DEFAULT_GRID: usize = 128;
const TOP_STARTS: usize = 10;
const POLISH_ITERS: usize = 200;

/// `(cos θ e^{iα}, sin θ e^{iβ})` with `θ ∈ [0, π/2]`, `α, β ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl SpherePoint {
    pub fn new(theta: f64, alpha: f64, beta: f64) -> Self {
        Self { theta, alpha, beta }
    }

    pub fn to_point(&self) -> Point2 {
        point_of(self.theta, self.alpha, self.beta)
    }

    /// Canonical angles of a point on the sphere.
    pub fn from_point(z: &Point2) -> Self {
        Self {
            theta: z[1].norm().atan2(z[0].norm()),
            alpha: z[0].arg().rem_euclid(TAU),
            beta: z[1].arg().rem_euclid(TAU),
        }
    }
}

fn point_of(theta: f64, alpha: f64, beta: f64) -> Point2 {
    [
        C64::from_polar(theta.cos(), alpha),
        C64::from_polar(theta.sin(), beta),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub grid_n: usize,
    pub polish: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            grid_n: DEFAULT_GRID,
            polish: true,
        }
    }
}

/// `|f|` on the angle grid. `θ` takes `grid_n + 1` values from `0` to `π/2`
/// inclusive, `α` and `β` take `grid_n` values each.
#[derive(Debug, Clone)]
pub struct GridScan {
    pub grid_n: usize,
    values: Vec<f64>,
}

impl GridScan {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn point(&self, index: usize) -> SpherePoint {
        let n = self.grid_n;
        let (it, rest) = (index / (n * n), index % (n * n));
        SpherePoint::new(
            FRAC_PI_2 * it as f64 / n as f64,
            TAU * (rest / n) as f64 / n as f64,
            TAU * (rest % n) as f64 / n as f64,
        )
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Indices of the `k` largest values, ties broken by smaller index.
    pub fn top(&self, k: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.values.len()).collect();
        let cmp = |a: &usize, b: &usize| self.values[*b].total_cmp(&self.values[*a]).then(a.cmp(b));
        let k = k.min(idx.len());
        if k == 0 {
            return Vec::new();
        }
        idx.select_nth_unstable_by(k - 1, cmp);
        idx.truncate(k);
        idx.sort_by(cmp);
        idx
    }
}

/// Evaluates `|f|` on the whole grid, factoring the sum through `z₂`-powers.
pub fn scan_grid(f: &BiPoly, grid_n: usize) -> Result<GridScan> {
    if grid_n < 2 {
        return Err(Error::InvalidInput(format!(
            "grid size {grid_n} is below 2"
        )));
    }
    let n = grid_n;
    let qmax = f.terms().map(|(_, q, _)| q as usize).max().unwrap_or(0);
    let mut by_q: Vec<Vec<(u32, C64)>> = vec![Vec::new(); qmax + 1];
    for (p, q, c) in f.terms() {
        by_q[q as usize].push((p, c));
    }
    let unit = |k: usize| C64::from_polar(1.0, TAU * k as f64 / n as f64);
    let units: Vec<C64> = (0..n).map(unit).collect();

    let slabs: Vec<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|it| {
            let theta = FRAC_PI_2 * it as f64 / n as f64;
            let (ct, st) = (theta.cos(), theta.sin());
            let mut out = Vec::with_capacity(n * n);
            let mut d = vec![C64::new(0.0, 0.0); qmax + 1];
            for ua in &units {
                let x = ua * ct;
                for (q, slot) in d.iter_mut().enumerate() {
                    *slot = by_q[q].iter().map(|(p, c)| c * x.powu(*p)).sum::<C64>()
                        * st.powi(q as i32);
                }
                for ub in &units {
                    let mut acc = C64::new(0.0, 0.0);
                    for dq in d.iter().rev() {
                        acc = acc * ub + dq;
                    }
                    out.push(acc.norm());
                }
            }
            out
        })
        .collect();
    Ok(GridScan {
        grid_n,
        values: slabs.concat(),
    })
}

/// Grid-plus-polish estimate of `sup_{S} |f|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupScan {
    pub sup_norm: f64,
    pub grid_max: f64,
    /// Polished maximisers whose value is within `sup_error_bound` of `sup_norm`.
    pub argmax: Vec<SpherePoint>,
    /// Lipschitz bound on the gap between the grid maximum and the true sup.
    pub sup_error_bound: f64,
    pub grid_n: usize,
}

/// Estimates the sup of `|f|` over the sphere. The true sup lies in
/// `[sup_norm, sup_norm + sup_error_bound]` up to rounding.
pub fn sphere_sup(f: &BiPoly, opts: ScanOptions) -> Result<SupScan> {
    let grid = scan_grid(f, opts.grid_n)?;
    Ok(sup_from_grid(f, &grid, opts.polish))
}

fn sup_from_grid(f: &BiPoly, grid: &GridScan, polish: bool) -> SupScan {
    let grid_max = grid.max();
    let starts = grid.top(TOP_STARTS);
    let mut found: Vec<(f64, SpherePoint)> = if polish {
        starts
            .par_iter()
            .map(|&i| nelder_mead(f, grid.point(i), grid.grid_n))
            .collect()
    } else {
        starts
            .iter()
            .map(|&i| (grid.values[i], grid.point(i)))
            .collect()
    };
    found.sort_by(|a, b| b.0.total_cmp(&a.0));
    let sup_norm = found.first().map_or(0.0, |x| x.0).max(grid_max);
    let bound = lipschitz_bound(f, grid.grid_n);
    SupScan {
        sup_norm,
        grid_max,
        argmax: found
            .iter()
            .filter(|(v, _)| *v >= sup_norm - bound)
            .map(|(_, p)| *p)
            .collect(),
        sup_error_bound: bound,
        grid_n: grid.grid_n,
    }
}

fn lipschitz_bound(f: &BiPoly, grid_n: usize) -> f64 {
    let h_theta = FRAC_PI_2 / grid_n as f64;
    let h_angle = TAU / grid_n as f64;
    f.terms()
        .map(|(p, q, c)| {
            let (p, q) = (p as f64, q as f64);
            c.norm() * ((p + q) * h_theta + (p + q) * h_angle) / 2.0
        })
        .sum()
}

fn nelder_mead(f: &BiPoly, start: SpherePoint, grid_n: usize) -> (f64, SpherePoint) {
    let cost = |x: &[f64; 3]| -f.eval(&point_of(x[0], x[1], x[2])).norm();
    let step = [
        FRAC_PI_2 / grid_n as f64,
        TAU / grid_n as f64,
        TAU / grid_n as f64,
    ];
    let x0 = [start.theta, start.alpha, start.beta];
    let mut simplex: Vec<([f64; 3], f64)> = (0..4)
        .map(|k| {
            let mut x = x0;
            if k > 0 {
                x[k - 1] += step[k - 1];
            }
            (x, cost(&x))
        })
        .collect();
    let lerp = |a: &[f64; 3], b: &[f64; 3], t: f64| -> [f64; 3] {
        [
            a[0] + t * (b[0] - a[0]),
            a[1] + t * (b[1] - a[1]),
            a[2] + t * (b[2] - a[2]),
        ]
    };
    for _ in 0..POLISH_ITERS {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut centroid = [0.0; 3];
        for (x, _) in &simplex[..3] {
            for d in 0..3 {
                centroid[d] += x[d] / 3.0;
            }
        }
        let worst = simplex[3];
        let reflected = lerp(&centroid, &worst.0, -1.0);
        let fr = cost(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst.0, -2.0);
            let fe = cost(&expanded);
            simplex[3] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[2].1 {
            simplex[3] = (reflected, fr);
        } else {
            let contracted = lerp(&centroid, &worst.0, 0.5);
            let fc = cost(&contracted);
            if fc < worst.1 {
                simplex[3] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    let x = lerp(&best, &v.0, 0.5);
                    *v = (x, cost(&x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex[0];
    let start_value = -cost(&x0);
    if -fx < start_value {
        return (start_value, start);
    }
    (-fx, SpherePoint::from_point(&point_of(x[0], x[1], x[2])))
}

/// Grid points where `|f|` is within `tol` of the polished sup.
pub fn max_modulus_set(f: &BiPoly, tol: f64, grid_n: usize) -> Result<Vec<SpherePoint>> {
    let grid = scan_grid(f, grid_n)?;
    let sup = sup_from_grid(f, &grid, true).sup_norm;
    Ok(grid
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v >= sup - tol)
        .map(|(i, _)| grid.point(i))
        .collect())
}

/// How well a candidate extends a disk function: interpolation error on
/// `φ(D)` and sup norm over the sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub candidate: BiPoly,
    pub interp_residual: f64,
    pub sup_norm: f64,
    pub argmax: Vec<SpherePoint>,
    pub sup_error_bound: f64,
}

pub fn extension_report(
    candidate: &BiPoly,
    target: &UniPoly,
    opts: ScanOptions,
) -> Result<ExtensionReport> {
    let restricted = restrict_to_disk(candidate);
    let mut interp_residual = restricted.max_diff(target);
    for k in 0..64 {
        let t = TAU * k as f64 / 64.0;
        for r in [0.5, 1.0] {
            let z = C64::from_polar(r, t);
            let diff = (candidate.eval(&phi(z)) - target.eval(z)).norm();
            interp_residual = interp_residual.max(diff);
        }
    }
    let scan = sphere_sup(candidate, opts)?;
    Ok(ExtensionReport {
        candidate: candidate.clone(),
        interp_residual,
        sup_norm: scan.sup_norm,
        argmax: scan.argmax,
        sup_error_bound: scan.sup_error_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{extension_gk, g2, g3, sqrt2_z1};
    use crate::{c, norm2, SQRT2};
    use std::f64::consts::FRAC_PI_4;

    fn opts(grid_n: usize) -> ScanOptions {
        ScanOptions {
            grid_n,
            polish: true,
        }
    }

    #[test]
    fn sphere_points_roundtrip() {
        let p = SpherePoint::new(0.3, 1.0, 5.0);
        let z = p.to_point();
        assert!((norm2(&z) - 1.0).abs() < 1e-15);
        let back = SpherePoint::from_point(&z);
        assert!((back.theta - 0.3).abs() < 1e-14);
        assert!((back.alpha - 1.0).abs() < 1e-14);
        assert!((back.beta - 5.0).abs() < 1e-14);
    }

    #[test]
    fn grid_matches_direct_evaluation() {
        let f = &g2() + &BiPoly::monomial(3, 2, c(0.3, -0.2));
        let grid = scan_grid(&f, 8).unwrap();
        for (i, v) in grid.values().iter().enumerate() {
            let direct = f.eval(&grid.point(i).to_point()).norm();
            assert!((v - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn sup_examples() {
        let s = sphere_sup(&g3(), opts(DEFAULT_GRID)).unwrap();
        assert!((s.sup_norm - 1.0).abs() < 1e-6);
        assert!(s.argmax.iter().all(|p| (p.theta - FRAC_PI_4).abs() < 1e-3));

        let s = sphere_sup(&g2(), opts(DEFAULT_GRID)).unwrap();
        assert!((s.sup_norm - 1.0).abs() < 1e-6);

        let s = sphere_sup(&sqrt2_z1(), opts(DEFAULT_GRID)).unwrap();
        assert!((s.sup_norm - SQRT2).abs() < 1e-6);

        let s = sphere_sup(&BiPoly::z1(), opts(DEFAULT_GRID)).unwrap();
        assert!((s.sup_norm - 1.0).abs() < 1e-12);
        assert!(s.argmax.iter().all(|p| p.theta.abs() < 1e-6));
    }

    #[test]
    fn sup_bound_brackets_truth() {
        let f = extension_gk(5).unwrap();
        let coarse = sphere_sup(
            &f,
            ScanOptions {
                grid_n: 16,
                polish: false,
            },
        )
        .unwrap();
        assert!(coarse.sup_norm <= 1.0 + 1e-12);
        assert!(coarse.sup_norm + coarse.sup_error_bound >= 1.0);
    }

    #[test]
    fn extension_norms_are_one() {
        for k in [0, 2, 3, 4, 5, 6, 7] {
            let f = extension_gk(k).unwrap();
            let target = UniPoly::monomial(k as usize, c(1.0, 0.0));
            let r = extension_report(&f, &target, opts(64)).unwrap();
            assert!(r.interp_residual < 1e-12, "k={k}");
            assert!((r.sup_norm - 1.0).abs() < 1e-6, "k={k}: {}", r.sup_norm);
        }
    }

    #[test]
    fn max_modulus_of_g3_is_the_middle_torus() {
        let set = max_modulus_set(&g3(), 1e-6, 64).unwrap();
        assert_eq!(set.len(), 64 * 64);
        assert!(set.iter().all(|p| (p.theta - FRAC_PI_4).abs() < 1e-12));
    }

    #[test]
    fn tiny_grid_rejected() {
        assert!(matches!(scan_grid(&g3(), 1), Err(Error::InvalidInput(_))));
    }
}
