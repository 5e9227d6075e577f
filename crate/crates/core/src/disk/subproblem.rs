use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pick::{minimal_norm, DEFAULT_REL_TOL};
use super::DiskProblem;
use crate::{Error, Result};

pub const DEFAULT_EPS_REL: f64 = 1e-8;
pub const MAX_SUBSET_POINTS: usize = 16;

/// Index subsets whose restricted problem keeps the full extremal norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubproblemReport {
    pub full_norm: f64,
    pub sufficient_subsets: Vec<Vec<usize>>,
    pub minimal_sufficient: Vec<Vec<usize>>,
}

fn indices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Enumerates every nonempty subset; `S` is sufficient iff
/// `m(S) >= (1 − ε_rel) · m(full)` (ties count as sufficient).
///
/// Sufficiency is inherited by supersets, so a sufficient subset is minimal
/// exactly when no single-point removal stays sufficient. Output lists are in
/// lexicographic order of their sorted index vectors.
pub fn sufficient_subsets(problem: &DiskProblem, eps_rel: f64) -> Result<SubproblemReport> {
    let n = problem.len();
    if n > MAX_SUBSET_POINTS {
        return Err(Error::TooManyPoints(n));
    }
    let full_norm = minimal_norm(problem, DEFAULT_REL_TOL)?;
    let threshold = (1.0 - eps_rel) * full_norm;
    let count = 1u32 << n;
    let sufficient: Vec<bool> = (0..count)
        .into_par_iter()
        .map(|mask| {
            if mask == 0 {
                return Ok(false);
            }
            let sub = problem.subproblem(&indices(mask, n))?;
            Ok(minimal_norm(&sub, DEFAULT_REL_TOL)? >= threshold)
        })
        .collect::<Result<_>>()?;

    let mut suff = Vec::new();
    let mut minimal = Vec::new();
    for mask in 1..count {
        if !sufficient[mask as usize] {
            continue;
        }
        let idx = indices(mask, n);
        let has_smaller =
            idx.len() > 1 && idx.iter().any(|&i| sufficient[(mask & !(1 << i)) as usize]);
        if !has_smaller {
            minimal.push(idx.clone());
        }
        suff.push(idx);
    }
    suff.sort();
    minimal.sort();
    Ok(SubproblemReport {
        full_norm,
        sufficient_subsets: suff,
        minimal_sufficient: minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn moebius_pairs_are_minimal() {
        let pts = vec![c(0.0, 0.0), c(0.5, 0.0), c(-0.5, 0.0)];
        let p = DiskProblem::new(pts.clone(), pts).unwrap();
        let r = sufficient_subsets(&p, DEFAULT_EPS_REL).unwrap();
        assert_eq!(
            r.minimal_sufficient,
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(
            r.sufficient_subsets,
            vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn schwarz_only_full_pair() {
        let p = DiskProblem::new(
            vec![c(0.0, 0.0), c(0.5, 0.0)],
            vec![c(0.0, 0.0), c(0.25, 0.0)],
        )
        .unwrap();
        let r = sufficient_subsets(&p, DEFAULT_EPS_REL).unwrap();
        assert_eq!(r.sufficient_subsets, vec![vec![0, 1]]);
        assert_eq!(r.minimal_sufficient, vec![vec![0, 1]]);
    }

    #[test]
    fn singleton_problem() {
        let p = DiskProblem::new(vec![c(0.2, 0.0)], vec![c(0.4, 0.0)]).unwrap();
        let r = sufficient_subsets(&p, DEFAULT_EPS_REL).unwrap();
        assert_eq!(r.minimal_sufficient, vec![vec![0]]);
    }

    #[test]
    fn too_many_points() {
        let pts: Vec<_> = (0..17).map(|k| c(0.05 * k as f64, 0.0)).collect();
        let p = DiskProblem::new(pts.clone(), pts).unwrap();
        assert_eq!(
            sufficient_subsets(&p, DEFAULT_EPS_REL),
            Err(Error::TooManyPoints(17))
        );
    }
}
