use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::ball::phi;
use crate::rng::{bipoly, stream};
use crate::{BiPoly, Error, Point2, Result, C64};

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Probability measure with finitely many atoms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExplicitRepr", into = "ExplicitRepr")]
pub struct QuadratureMeasure {
    nodes: Vec<Point2>,
    weights: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ExplicitRepr {
    nodes: Vec<[[f64; 2]; 2]>,
    weights: Vec<f64>,
}

impl TryFrom<ExplicitRepr> for QuadratureMeasure {
    type Error = Error;
    fn try_from(r: ExplicitRepr) -> Result<Self> {
        let nodes = r
            .nodes
            .iter()
            .map(|[a, b]| [C64::new(a[0], a[1]), C64::new(b[0], b[1])])
            .collect();
        Self::new(nodes, r.weights)
    }
}

impl From<QuadratureMeasure> for ExplicitRepr {
    fn from(m: QuadratureMeasure) -> Self {
        Self {
            nodes: m
                .nodes
                .iter()
                .map(|z| [[z[0].re, z[0].im], [z[1].re, z[1].im]])
                .collect(),
            weights: m.weights,
        }
    }
}

/// Measure description as read from a file: either the arc measure on the
/// embedded circle or explicit atoms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeasureSpec {
    Curve { curve: String, nodes: usize },
    Explicit(QuadratureMeasure),
}

impl MeasureSpec {
    pub fn build(&self) -> Result<QuadratureMeasure> {
        match self {
            Self::Curve { curve, nodes } if curve == "phi_circle" => arc_measure_on_phi(*nodes),
            Self::Curve { curve, .. } => {
                Err(Error::InvalidInput(format!("unknown curve {curve:?}")))
            }
            Self::Explicit(m) => Ok(m.clone()),
        }
    }
}

impl QuadratureMeasure {
    pub fn new(nodes: Vec<Point2>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} nodes against {} weights",
                nodes.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidInput(format!("weight {w} is not positive")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidInput(format!("weights sum to {total}")));
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i] == nodes[j] {
                    return Err(Error::NonDistinctPoints(i, j));
                }
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[Point2] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: &BiPoly) -> C64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| f.eval(x) * *w)
            .sum()
    }

    /// `max |f|` over the atoms.
    pub fn sup_on_support(&self, f: &BiPoly) -> f64 {
        self.nodes
            .iter()
            .map(|x| f.eval(x).norm())
            .fold(0.0, f64::max)
    }
}

/// `φ` applied to the `M`-th roots of unity, uniform weights.
pub fn arc_measure_on_phi(m: usize) -> Result<QuadratureMeasure> {
    if m < 4 {
        return Err(Error::InvalidInput(format!("{m} nodes is below 4")));
    }
    let nodes = (0..m)
        .map(|k| phi(C64::from_polar(1.0, TAU * k as f64 / m as f64)))
        .collect();
    QuadratureMeasure::new(nodes, vec![1.0 / m as f64; m])
}

const REPRODUCTION_TRIALS: u64 = 20;
const REPRODUCTION_TOL: f64 = 1e-8;

/// Poisson weights `P_{ζ₀}(θ_k)/M` on the arc measure nodes: a representing
/// density for `φ(ζ₀)`. Checked against seeded random polynomials of total
/// degree at most `degree`.
pub fn representing_density(zeta0: C64, m: usize, degree: u32, seed: u64) -> Result<Vec<f64>> {
    if zeta0.norm() >= 1.0 {
        return Err(Error::InvalidInput(format!(
            "|ζ₀| = {} is not below 1",
            zeta0.norm()
        )));
    }
    let measure = arc_measure_on_phi(m)?;
    let r2 = zeta0.norm_sqr();
    let weights: Vec<f64> = (0..m)
        .map(|k| {
            let e = C64::from_polar(1.0, TAU * k as f64 / m as f64);
            (1.0 - r2) / (e - zeta0).norm_sqr() / m as f64
        })
        .collect();
    let b = phi(zeta0);
    for i in 0..REPRODUCTION_TRIALS {
        let f = bipoly(&mut stream(seed, i), degree);
        let approx: C64 = measure
            .nodes()
            .iter()
            .zip(&weights)
            .map(|(x, w)| f.eval(x) * *w)
            .sum();
        let err = (approx - f.eval(&b)).norm();
        if err > REPRODUCTION_TOL {
            return Err(Error::ReproductionFailed(err));
        }
    }
    Ok(weights)
}

/// Outcome of testing `|F(z)| ≤ max_K |F|` on monomials and random polynomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxPrincipleCheck {
    pub pass: bool,
    pub polynomials_tested: usize,
    /// `Σ |density|`, the total variation of the representing measure.
    pub density_mass: f64,
    /// Largest `|Σ density·F(node) − F(z)|` seen.
    pub reproduction_error: f64,
    /// Polynomial with the largest ratio `|F(z)| / max_K |F|` among failures.
    pub witness: Option<BiPoly>,
    pub worst_ratio: f64,
}

const MONOMIAL_DEGREE: u32 = 8;
const RANDOM_DEGREE: u32 = 6;
const MAX_PRINCIPLE_TOL: f64 = 1e-8;

/// A point with a positive representing density on `nodes` satisfies
/// `|F(z)| ≤ max |F(node)|`. Monomials up to degree 8 are tried first, then
/// `trials` seeded random polynomials of degree at most 6.
pub fn max_principle_check(
    z: &Point2,
    density: &[f64],
    nodes: &[Point2],
    trials: usize,
    seed: u64,
) -> Result<MaxPrincipleCheck> {
    if nodes.is_empty() || density.len() != nodes.len() {
        return Err(Error::InvalidInput(format!(
            "{} density weights against {} nodes",
            density.len(),
            nodes.len()
        )));
    }
    let mut out = MaxPrincipleCheck {
        pass: true,
        polynomials_tested: 0,
        density_mass: density.iter().map(|w| w.abs()).sum(),
        reproduction_error: 0.0,
        witness: None,
        worst_ratio: 0.0,
    };
    let run = |out: &mut MaxPrincipleCheck, f: BiPoly| {
        out.polynomials_tested += 1;
        let at_z = f.eval(z);
        let reproduced: C64 = nodes.iter().zip(density).map(|(x, w)| f.eval(x) * *w).sum();
        out.reproduction_error = out.reproduction_error.max((reproduced - at_z).norm());
        let sup = nodes.iter().map(|x| f.eval(x).norm()).fold(0.0, f64::max);
        let ratio = at_z.norm() / sup.max(f64::MIN_POSITIVE);
        let fails = at_z.norm() > sup + MAX_PRINCIPLE_TOL;
        if fails && (out.pass || ratio > out.worst_ratio) {
            out.witness = Some(f);
            out.worst_ratio = ratio;
        } else if out.pass {
            out.worst_ratio = out.worst_ratio.max(ratio);
        }
        out.pass &= !fails;
    };
    for n in 0..=MONOMIAL_DEGREE {
        for q in 0..=n {
            run(&mut out, BiPoly::monomial(n - q, q, C64::new(1.0, 0.0)));
        }
    }
    if out.pass {
        for i in 0..trials as u64 {
            run(&mut out, bipoly(&mut stream(seed, i), RANDOM_DEGREE));
        }
    }
    Ok(out)
}
