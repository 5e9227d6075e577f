use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::embedding::{g3, restrict_to_disk, sqrt2_z1, w2};
use super::sphere::{sphere_sup, ScanOptions};
use crate::rng::{bipoly, stream};
use crate::{BiPoly, Error, Result, UniPoly, C64, COEFF_TOL, SQRT2};

/// Outcome of a randomized batch: `margin = sup − threshold` per sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    pub seed: u64,
    pub count: usize,
    pub threshold: f64,
    pub min_sup: f64,
    pub min_margin: f64,
    pub worst_index: usize,
}

const QUOTIENT_DEGREE: u32 = 4;

/// Random extensions of `ζ` of the form `√2 z₁ + (z₂ − √2 z₁²) Q` never beat
/// sup norm `√2`. The largest coefficient of `Q` is drawn from `[1e-3, 1]`.
pub fn probe_linear_extensions(seed: u64, count: usize, opts: ScanOptions) -> Result<MarginReport> {
    let target = UniPoly::monomial(1, C64::new(1.0, 0.0));
    run_batch(seed, count, SQRT2, 1e-4, opts, &target, |i| {
        let mut rng = stream(seed, i as u64);
        let q = bipoly(&mut rng, QUOTIENT_DEGREE);
        let size = 10f64.powf(-3.0 * rng.random::<f64>());
        let q = q.scale(C64::new(size / q.max_coeff_abs(), 0.0));
        &sqrt2_z1() + &(&w2() * &q)
    })
}

/// Random perturbations `g̃₃ + w₂² H` of the norm-one extension of `ζ³` all
/// have sup norm strictly above one.
pub fn probe_cubic_extensions(seed: u64, count: usize, opts: ScanOptions) -> Result<MarginReport> {
    let target = UniPoly::monomial(3, C64::new(1.0, 0.0));
    let w = w2();
    let w_sq = &w * &w;
    run_batch(seed, count, 1.0, -1e-8, opts, &target, |i| {
        let mut rng = stream(seed, i as u64);
        let h = bipoly(&mut rng, QUOTIENT_DEGREE);
        let size = 0.1 + 0.9 * rng.random::<f64>();
        let h = h.scale(C64::new(size / h.max_coeff_abs(), 0.0));
        &g3() + &(&w_sq * &h)
    })
}

/// Samples must satisfy `sup > threshold − slack` (a negative slack demands a
/// strict excess).
fn run_batch(
    seed: u64,
    count: usize,
    threshold: f64,
    slack: f64,
    opts: ScanOptions,
    target: &UniPoly,
    make: impl Fn(usize) -> BiPoly + Sync,
) -> Result<MarginReport> {
    if count == 0 {
        return Err(Error::InvalidInput("empty batch".into()));
    }
    let sups: Vec<Result<f64>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let f = make(i);
            let restricted = restrict_to_disk(&f);
            let off = restricted.max_diff(target);
            if off > COEFF_TOL {
                return Err(Error::PropertyViolation {
                    seed,
                    index: i as u64,
                    detail: format!("restriction differs from target by {off:e}"),
                });
            }
            let sup = sphere_sup(&f, opts)?.sup_norm;
            if sup <= threshold - slack {
                return Err(Error::PropertyViolation {
                    seed,
                    index: i as u64,
                    detail: format!("sup {sup} against threshold {threshold}"),
                });
            }
            Ok(sup)
        })
        .collect();
    let mut report = MarginReport {
        seed,
        count,
        threshold,
        min_sup: f64::INFINITY,
        min_margin: f64::INFINITY,
        worst_index: 0,
    };
    for (i, s) in sups.into_iter().enumerate() {
        let s = s?;
        if s < report.min_sup {
            report.min_sup = s;
            report.min_margin = s - threshold;
            report.worst_index = i;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batches_pass() {
        let opts = ScanOptions {
            grid_n: 32,
            polish: true,
        };
        let r = probe_linear_extensions(3, 8, opts).unwrap();
        assert!(r.min_sup >= SQRT2 - 1e-4);
        let r = probe_cubic_extensions(3, 8, opts).unwrap();
        assert!(r.min_margin > 1e-8);
    }

    #[test]
    fn batches_are_reproducible() {
        let opts = ScanOptions {
            grid_n: 16,
            polish: true,
        };
        let a = probe_cubic_extensions(11, 4, opts).unwrap();
        let b = probe_cubic_extensions(11, 4, opts).unwrap();
        assert_eq!(a, b);
    }
}
