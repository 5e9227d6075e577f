use super::DiskProblem;
use crate::{Error, MoebiusMap, Result, C64};

/// One step of the Schur reduction, eliminating the last node.
///
/// With `a'_j = φ_{a_N}(a_j)` and `v''_j = φ_{v_N}(v_j) / a'_j` for `j < N`,
/// a function of norm below 1 solves the original problem iff one solves the
/// reduced problem. The data must already be normalized so that the
/// candidate norm is 1.
pub fn schur_reduce(problem: &DiskProblem) -> Result<DiskProblem> {
    let n = problem.len();
    if n < 2 {
        return Err(Error::InvalidInput(
            "Schur reduction needs at least two points".into(),
        ));
    }
    let v_last = problem.values()[n - 1];
    if v_last.norm() >= 1.0 {
        return Err(Error::UnimodularValue(v_last.norm()));
    }
    let src = MoebiusMap::new(problem.points()[n - 1])?;
    let dst = MoebiusMap::new(v_last)?;
    let mut points = Vec::with_capacity(n - 1);
    let mut values: Vec<C64> = Vec::with_capacity(n - 1);
    for j in 0..n - 1 {
        let a = src.eval(problem.points()[j]);
        values.push(dst.eval(problem.values()[j]) / a);
        points.push(a);
    }
    DiskProblem::new(points, values)
}
