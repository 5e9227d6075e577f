use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::{BiPoly, Error, Point2, Result, C64, INV_SQRT2};

/// A witness must beat the support maximum by more than this.
pub const HULL_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HullVerdict {
    Excluded {
        witness_index: usize,
        witness: BiPoly,
        value_at_point: f64,
        support_max: f64,
    },
    NotExcluded,
}

impl HullVerdict {
    pub fn is_excluded(&self) -> bool {
        matches!(self, Self::Excluded { .. })
    }
}

/// Monomials `z₁^p z₂^q`, `p, q ≤ 8`, `(p, q) ≠ (0, 0)`, in lexicographic order.
pub fn default_witnesses() -> Vec<BiPoly> {
    (0..=8u32)
        .flat_map(|p| (0..=8u32).map(move |q| (p, q)))
        .filter(|&pq| pq != (0, 0))
        .map(|(p, q)| BiPoly::monomial(p, q, C64::new(1.0, 0.0)))
        .collect()
}

/// `n × n` samples of the torus `|z₁| = |z₂| = 1/√2`.
pub fn torus_samples(n: usize) -> Vec<Point2> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            [
                C64::from_polar(INV_SQRT2, TAU * i as f64 / n as f64),
                C64::from_polar(INV_SQRT2, TAU * j as f64 / n as f64),
            ]
        })
        .collect()
}

/// Shows `p` lies outside the polynomial hull of `support` by finding a
/// witness with `|F(p)| > max_support |F|`. A failed search proves nothing.
pub fn hull_certificate(
    p: &Point2,
    support: &[Point2],
    witnesses: &[BiPoly],
) -> Result<HullVerdict> {
    if support.is_empty() {
        return Err(Error::InvalidInput("empty support".into()));
    }
    for (witness_index, w) in witnesses.iter().enumerate() {
        let support_max = support.iter().map(|x| w.eval(x).norm()).fold(0.0, f64::max);
        let value_at_point = w.eval(p).norm();
        if value_at_point > support_max + HULL_MARGIN {
            return Ok(HullVerdict::Excluded {
                witness_index,
                witness: w.clone(),
                value_at_point,
                support_max,
            });
        }
    }
    Ok(HullVerdict::NotExcluded)
}
