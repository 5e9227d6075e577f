use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::QuadratureMeasure;
use crate::{BiPoly, Error, Point2, Result, C64};

/// Relative cutoff on Gram eigenvalues (squared singular values of the
/// weighted sample matrix) below which a direction counts as `μ`-null.
pub const GRAM_CUTOFF: f64 = 1e-12;
/// Relative distance of the conjugated evaluation vector from the row space
/// above which point evaluation is not well defined on the quotient.
const CONSISTENCY_TOL: f64 = 1e-6;

/// Nodes needed to resolve every monomial of degree `≤ d` on the circle.
pub fn min_nodes_for_degree(d: u32) -> usize {
    4 * (2 * d as usize + 1)
}

/// Polynomials of total degree `≤ d` as a subspace of `L²(μ)`.
///
/// Functions are represented by weighted sample vectors `(√w_k h(x_k))_k`.
/// The SVD `B = U Σ V^H` of the weighted sample matrix of the basis gives
/// an orthonormal basis `U_r` of the quotient by the `μ`-null polynomials.
#[derive(Debug, Clone)]
pub struct TruncatedH2 {
    degree: u32,
    basis: Vec<(u32, u32)>,
    measure: QuadratureMeasure,
    samples: DMatrix<C64>,
    u_r: DMatrix<C64>,
    sigma: Vec<f64>,
    v_r: DMatrix<C64>,
    gram: OnceLock<DMatrix<C64>>,
}

/// Reproducing kernel `k_b` of the truncated space: `⟨f, k_b⟩ = f(b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelVector {
    pub b: Point2,
    pub degree: u32,
    /// Coefficients in the monomial basis (minimal-norm representative).
    pub coefficients: Vec<C64>,
    pub norm: f64,
    /// Coordinates in the orthonormal basis of the quotient.
    pub coords: Vec<C64>,
    pub consistency_residual: f64,
}

impl TruncatedH2 {
    pub fn new(measure: &QuadratureMeasure, degree: u32) -> Result<Self> {
        let need = min_nodes_for_degree(degree);
        if measure.len() < need {
            return Err(Error::InvalidInput(format!(
                "degree {degree} needs at least {need} nodes, got {}",
                measure.len()
            )));
        }
        let basis: Vec<(u32, u32)> = (0..=degree)
            .flat_map(|n| (0..=n).map(move |q| (n - q, q)))
            .collect();
        let m = measure.len();
        let mut samples = DMatrix::<C64>::zeros(m, basis.len());
        for (k, (x, w)) in measure.nodes().iter().zip(measure.weights()).enumerate() {
            let row = basis_values(x, degree);
            let sw = w.sqrt();
            for (i, v) in row.into_iter().enumerate() {
                samples[(k, i)] = v * sw;
            }
        }
        let svd = samples.clone().svd(true, true);
        let (u, v_t) = match (svd.u, svd.v_t) {
            (Some(u), Some(v_t)) => (u, v_t),
            _ => return Err(Error::Numeric("singular value decomposition failed".into())),
        };
        let s = svd.singular_values;
        let smax = s.iter().copied().fold(0.0, f64::max);
        // nalgebra returns singular values sorted in decreasing order.
        let r = s
            .iter()
            .take_while(|&&x| x * x >= GRAM_CUTOFF * smax * smax && x > 0.0)
            .count();
        if r == 0 {
            return Err(Error::Numeric(
                "measure annihilates every polynomial".into(),
            ));
        }
        Ok(Self {
            degree,
            basis,
            measure: measure.clone(),
            samples,
            u_r: u.columns(0, r).into_owned(),
            sigma: s.iter().take(r).copied().collect(),
            v_r: v_t.rows(0, r).adjoint(),
            gram: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Monomial exponents `(p, q)`, ordered by total degree then by `q`.
    pub fn basis(&self) -> &[(u32, u32)] {
        &self.basis
    }

    pub fn measure(&self) -> &QuadratureMeasure {
        &self.measure
    }

    /// Dimension of the quotient by the `μ`-null polynomials.
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub(crate) fn orthonormal_samples(&self) -> &DMatrix<C64> {
        &self.u_r
    }

    /// `gram[i][j] = Σ_k w_k b_i(x_k) conj(b_j(x_k))`, assembled row by row.
    pub fn gram(&self) -> &DMatrix<C64> {
        self.gram.get_or_init(|| {
            let n = self.basis.len();
            let cols: Vec<Vec<C64>> = (0..n)
                .map(|i| self.samples.column(i).iter().copied().collect())
                .collect();
            let rows: Vec<Vec<C64>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            cols[i]
                                .iter()
                                .zip(&cols[j])
                                .map(|(a, b)| a * b.conj())
                                .sum()
                        })
                        .collect()
                })
                .collect();
            DMatrix::from_fn(n, n, |i, j| rows[i][j])
        })
    }

    /// `⟨f, g⟩ = ∫ f ḡ dμ`.
    pub fn inner(&self, f: &BiPoly, g: &BiPoly) -> C64 {
        self.measure
            .nodes()
            .iter()
            .zip(self.measure.weights())
            .map(|(x, w)| f.eval(x) * g.eval(x).conj() * *w)
            .sum()
    }

    /// Coefficient vector of `f` in the monomial basis.
    pub fn coefficients_of(&self, f: &BiPoly) -> Result<DVector<C64>> {
        if f.total_degree() > self.degree as i64 {
            return Err(Error::InvalidInput(format!(
                "degree {} exceeds the truncation degree {}",
                f.total_degree(),
                self.degree
            )));
        }
        Ok(DVector::from_iterator(
            self.basis.len(),
            self.basis.iter().map(|&(p, q)| f.coeff(p, q)),
        ))
    }

    /// Kernel at `b`. Fails with `InconsistentEvaluation` when two
    /// polynomials that agree `μ`-almost everywhere take different values at `b`.
    pub fn kernel_at(&self, b: &Point2) -> Result<KernelVector> {
        let e_bar = DVector::from_vec(
            basis_values(b, self.degree)
                .into_iter()
                .map(|v| v.conj())
                .collect(),
        );
        let proj = self.v_r.adjoint() * &e_bar;
        let scale = e_bar.norm().max(f64::MIN_POSITIVE);
        let consistency_residual = (&e_bar - &self.v_r * &proj).norm() / scale;
        if consistency_residual > CONSISTENCY_TOL {
            return Err(Error::InconsistentEvaluation(consistency_residual));
        }
        let y: DVector<C64> = DVector::from_iterator(
            proj.len(),
            proj.iter().zip(&self.sigma).map(|(p, s)| p / *s),
        );
        let scaled =
            DVector::from_iterator(y.len(), y.iter().zip(&self.sigma).map(|(y, s)| y / *s));
        let coefficients = &self.v_r * scaled;
        Ok(KernelVector {
            b: *b,
            degree: self.degree,
            coefficients: coefficients.iter().copied().collect(),
            norm: y.norm(),
            coords: y.iter().copied().collect(),
            consistency_residual,
        })
    }
}

impl KernelVector {
    pub fn as_poly(&self, space: &TruncatedH2) -> BiPoly {
        BiPoly::from_terms(
            space
                .basis()
                .iter()
                .zip(&self.coefficients)
                .map(|(&(p, q), c)| (p, q, *c)),
        )
    }
}

/// Graded monomials at `x`: `x₁^p x₂^q` for `p + q ≤ d`, ordered like the basis.
fn basis_values(x: &Point2, d: u32) -> Vec<C64> {
    let p1: Vec<C64> = (0..=d).map(|p| x[0].powu(p)).collect();
    let p2: Vec<C64> = (0..=d).map(|q| x[1].powu(q)).collect();
    (0..=d as usize)
        .flat_map(|n| (0..=n).map(move |q| (n - q, q)))
        .map(|(p, q)| p1[p] * p2[q])
        .collect()
}

/// Evidence about whether `‖k_b‖` stays bounded as the truncation grows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Growth {
    Converges {
        limit: f64,
        norms: Vec<f64>,
    },
    /// Heuristic flag only: finite truncations cannot prove divergence.
    Diverges {
        norms: Vec<Option<f64>>,
        reason: String,
    },
}

const GROWTH_TOL: f64 = 1e-3;

/// `‖k_b‖` across increasing truncation degrees. Converges when the last
/// relative increase is below `1e-3`.
pub fn kernel_norm_growth(
    measure: &QuadratureMeasure,
    b: &Point2,
    degrees: &[u32],
) -> Result<Growth> {
    if degrees.len() < 3 || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "need at least three increasing degrees".into(),
        ));
    }
    let mut norms = Vec::with_capacity(degrees.len());
    for &d in degrees {
        let space = TruncatedH2::new(measure, d)?;
        match space.kernel_at(b) {
            Ok(k) => norms.push(Some(k.norm)),
            Err(Error::InconsistentEvaluation(r)) => {
                norms.push(None);
                norms.resize(degrees.len(), None);
                return Ok(Growth::Diverges {
                    norms,
                    reason: format!("evaluation inconsistent at degree {d} (residual {r:.3e})"),
                });
            }
            Err(e) => return Err(e),
        }
    }
    let vals: Vec<f64> = norms.iter().map(|n| n.unwrap_or(f64::NAN)).collect();
    let (prev, last) = (vals[vals.len() - 2], vals[vals.len() - 1]);
    let increase = (last - prev) / prev;
    if increase < GROWTH_TOL {
        Ok(Growth::Converges {
            limit: last,
            norms: vals,
        })
    } else {
        Ok(Growth::Diverges {
            norms,
            reason: format!("last relative increase {increase:.3e}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{phi, w2};
    use crate::measure::arc_measure_on_phi;
    use crate::{c, SQRT2};

    fn space(d: u32) -> TruncatedH2 {
        TruncatedH2::new(&arc_measure_on_phi(min_nodes_for_degree(d)).unwrap(), d).unwrap()
    }

    #[test]
    fn gram_examples() {
        let s = space(2);
        let g = s.gram();
        assert!((g - g.adjoint()).iter().all(|x| x.norm() < 1e-13));
        assert!((g[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        // basis order: 1, z1, z2, z1², z1z2, z2²
        assert!((g[(1, 1)] - c(0.5, 0.0)).norm() < 1e-14);
        assert!((g[(2, 3)] - g[(3, 3)] * SQRT2).norm() < 1e-14);
        assert!(s.inner(&w2(), &w2()).norm().sqrt() < 1e-13);
        assert_eq!(s.rank(), 5);
    }

    #[test]
    fn rejects_too_few_nodes() {
        let m = arc_measure_on_phi(16).unwrap();
        assert!(TruncatedH2::new(&m, 2).is_err());
    }

    #[test]
    fn kernel_examples() {
        let s = space(32);
        let k0 = s.kernel_at(&phi(c(0.0, 0.0))).unwrap();
        assert!((k0.norm - 1.0).abs() < 1e-10);
        // Coefficients are only defined modulo μ-null polynomials.
        let diff = &k0.as_poly(&s) - &BiPoly::one();
        assert!(s.inner(&diff, &diff).norm().sqrt() < 1e-10);

        let k = s.kernel_at(&phi(c(0.5, 0.0))).unwrap();
        assert!((k.norm * k.norm - 4.0 / 3.0).abs() < 1e-3);

        assert!(matches!(
            s.kernel_at(&[c(0.0, 0.0), c(0.5, 0.0)]),
            Err(Error::InconsistentEvaluation(_))
        ));
    }

    #[test]
    fn kernel_reproduces_through_gram() {
        let s = space(8);
        let b = phi(c(0.3, -0.4));
        let k = s.kernel_at(&b).unwrap();
        let g = s.gram();
        let kappa = DVector::from_vec(k.coefficients.iter().map(|x| x.conj()).collect());
        let repro = g * kappa;
        let e = basis_values(&b, 8);
        for (r, ev) in repro.iter().zip(&e) {
            assert!((r - ev).norm() < 1e-8);
        }
        // Same norm from the quadratic form.
        let kp = k.as_poly(&s);
        assert!((s.inner(&kp, &kp).re.sqrt() - k.norm).abs() < 1e-9);
    }

    #[test]
    fn kernel_matches_gram_pseudo_inverse() {
        let s = space(6);
        let b = phi(c(-0.2, 0.5));
        let k = s.kernel_at(&b).unwrap();
        let g = s.gram().clone();
        let eig = g.symmetric_eigen();
        let lmax = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
        let e = DVector::from_vec(basis_values(&b, 6));
        // ‖k‖² = e^H G⁺ e with G the Gram matrix (transpose convention).
        let mut quad = 0.0;
        for (i, l) in eig.eigenvalues.iter().enumerate() {
            if *l > GRAM_CUTOFF * lmax {
                let v = eig.eigenvectors.column(i);
                quad += (v.adjoint() * &e)[(0, 0)].norm_sqr() / l;
            }
        }
        assert!((quad - k.norm * k.norm).abs() < 1e-8 * quad);
    }

    #[test]
    fn growth_examples() {
        let m = arc_measure_on_phi(min_nodes_for_degree(32)).unwrap();
        match kernel_norm_growth(&m, &phi(c(0.3, 0.0)), &[8, 16, 32]).unwrap() {
            Growth::Converges { limit, .. } => {
                assert!((limit - (1.0f64 - 0.09).powf(-0.5)).abs() < 1e-9)
            }
            other => panic!("{other:?}"),
        }
        let g = kernel_norm_growth(&m, &[c(0.0, 0.0), c(0.5, 0.0)], &[8, 16, 32]).unwrap();
        assert!(matches!(g, Growth::Diverges { .. }));
        assert!(kernel_norm_growth(&m, &phi(c(0.3, 0.0)), &[8, 16]).is_err());
    }
}
