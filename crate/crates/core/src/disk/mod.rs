//! The finite minimal-norm interpolation problem on the unit disk.
//!
//! Given distinct `a_j` in the disk and targets `v_j`, the smallest sup norm
//! `m` of a bounded holomorphic `f` with `f(a_j) = v_j` is the smallest `ρ`
//! for which the Pick matrix of `v/ρ` is positive semidefinite. The unique
//! extremal function is `m` times a Blaschke product of degree at most
//! `N − 1`.

mod pick;
mod schur;
mod solution;
mod subproblem;

pub use pick::{
    is_psd, minimal_norm, pick_matrix, scaled_pick_matrix, smallest_eigenpair, DEFAULT_REL_TOL,
};
pub use schur::schur_reduce;
pub use solution::{
    extremal_solution, extremality_certificate, solve_extremal, ExtremalSolution, PickCertificate,
    DEFAULT_DELTA,
};
pub use subproblem::{sufficient_subsets, SubproblemReport, DEFAULT_EPS_REL, MAX_SUBSET_POINTS};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Minimum pairwise distance for interpolation nodes to count as distinct.
pub const MIN_SEPARATION: f64 = 1e-10;

/// Interpolation data `f(a_j) = v_j`, `1 <= j <= N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProblemRepr", into = "ProblemRepr")]
pub struct DiskProblem {
    points: Vec<C64>,
    values: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct ProblemRepr {
    points: Vec<[f64; 2]>,
    values: Vec<[f64; 2]>,
}

impl TryFrom<ProblemRepr> for DiskProblem {
    type Error = Error;
    fn try_from(r: ProblemRepr) -> Result<Self> {
        let conv = |v: Vec<[f64; 2]>| v.into_iter().map(|[re, im]| C64::new(re, im)).collect();
        DiskProblem::new(conv(r.points), conv(r.values))
    }
}

impl From<DiskProblem> for ProblemRepr {
    fn from(p: DiskProblem) -> Self {
        let conv = |v: &[C64]| v.iter().map(|c| [c.re, c.im]).collect();
        ProblemRepr {
            points: conv(&p.points),
            values: conv(&p.values),
        }
    }
}

impl DiskProblem {
    pub fn new(points: Vec<C64>, values: Vec<C64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput(
                "at least one interpolation point is required".into(),
            ));
        }
        if points.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if let Some(z) = points
            .iter()
            .chain(&values)
            .find(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidInput(format!("non-finite entry {z}")));
        }
        if let Some(a) = points.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::InvalidInput(format!(
                "point {a} is not in the open unit disk"
            )));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if (points[i] - points[j]).norm() <= MIN_SEPARATION {
                    return Err(Error::NonDistinctPoints(i, j));
                }
            }
        }
        Ok(DiskProblem { points, values })
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// The problem restricted to the given indices (kept in the given order).
    pub fn subproblem(&self, indices: &[usize]) -> Result<DiskProblem> {
        DiskProblem::new(
            indices.iter().map(|&i| self.points[i]).collect(),
            indices.iter().map(|&i| self.values[i]).collect(),
        )
    }

    /// Values multiplied by `s`.
    pub fn scaled(&self, s: C64) -> DiskProblem {
        DiskProblem {
            points: self.points.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }
}
