use minterp_core::disk::{
    extremality_certificate, minimal_norm, schur_reduce, solve_extremal, DiskProblem,
    DEFAULT_DELTA, DEFAULT_REL_TOL,
};
use minterp_core::rng::{blaschke, disk_point, separated_points, stream};
use minterp_core::{MoebiusMap, C64};
use proptest::prelude::*;

fn blaschke_instance(seed: u64, i: u64) -> (DiskProblem, minterp_core::BlaschkeProduct) {
    let mut r = stream(seed, i);
    let n = 2 + (i as usize % 5);
    let b = blaschke(&mut r, n - 1, 0.95);
    let pts = separated_points(&mut r, n, 0.9, 0.05);
    let vals = pts.iter().map(|&z| b.eval(z)).collect();
    (DiskProblem::new(pts, vals).unwrap(), b)
}

#[test]
fn blaschke_data_has_unit_norm_and_is_recovered() {
    for i in 0..200 {
        let (p, b) = blaschke_instance(0xA11CE, i);
        let m = minimal_norm(&p, DEFAULT_REL_TOL).unwrap();
        assert!((m - 1.0).abs() < 1e-8, "instance {i}: m = {m}");
        let sol = solve_extremal(&p).unwrap_or_else(|e| panic!("instance {i}: {e}"));
        assert!(sol.interp_residual < 1e-8, "instance {i}");
        // The extremal solution is unique, so it is the generating product.
        for k in 0..8 {
            let z = C64::from_polar(0.3, k as f64);
            let gap = (sol.eval(z) - b.eval(z)).norm();
            assert!(gap < 1e-5, "instance {i}: {gap:e}");
        }
    }
}

#[test]
fn certificates_on_blaschke_data() {
    for i in 0..40 {
        let (p, _) = blaschke_instance(7, i);
        let m = minimal_norm(&p, DEFAULT_REL_TOL).unwrap();
        let cert = extremality_certificate(&p, m, DEFAULT_DELTA).unwrap();
        assert!(cert.slack_low < 0.0);
        assert!(cert.slack_at.abs() <= cert.psd_tol);
    }
}

fn random_problem(seed: u64, n: usize) -> DiskProblem {
    let mut r = stream(seed, 0);
    let pts = separated_points(&mut r, n, 0.85, 0.1);
    let vals = (0..n).map(|_| disk_point(&mut r, 0.9)).collect();
    DiskProblem::new(pts, vals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_scales_with_data(seed in any::<u64>(), n in 2usize..6, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let lam = C64::new(re, im);
        prop_assume!(lam.norm() > 0.05);
        let p = random_problem(seed, n);
        let m = minimal_norm(&p, DEFAULT_REL_TOL).unwrap();
        let ms = minimal_norm(&p.scaled(lam), DEFAULT_REL_TOL).unwrap();
        prop_assert!((ms - lam.norm() * m).abs() < 1e-8 * ms.max(1.0));
    }

    #[test]
    fn subproblems_never_need_more(seed in any::<u64>(), n in 2usize..6, drop in 0usize..6) {
        let p = random_problem(seed, n);
        let m = minimal_norm(&p, DEFAULT_REL_TOL).unwrap();
        let keep: Vec<usize> = (0..n).filter(|&i| i != drop % n).collect();
        let ms = minimal_norm(&p.subproblem(&keep).unwrap(), DEFAULT_REL_TOL).unwrap();
        prop_assert!(ms <= m * (1.0 + 1e-9));
    }

    #[test]
    fn norm_is_invariant_under_disk_automorphisms(seed in any::<u64>(), n in 2usize..5, ar in -0.5f64..0.5, ai in -0.5f64..0.5) {
        let p = random_problem(seed, n);
        let phi = MoebiusMap::new(C64::new(ar, ai)).unwrap();
        let moved = DiskProblem::new(
            p.points().iter().map(|&z| phi.eval(z)).collect(),
            p.values().to_vec(),
        ).unwrap();
        let m = minimal_norm(&p, DEFAULT_REL_TOL).unwrap();
        let mm = minimal_norm(&moved, DEFAULT_REL_TOL).unwrap();
        prop_assert!((m - mm).abs() < 1e-8 * m.max(1.0));
    }

    #[test]
    fn schur_step_preserves_solvability(seed in any::<u64>(), n in 2usize..6) {
        let p = random_problem(seed, n);
        let m = minimal_norm(&p, DEFAULT_REL_TOL).unwrap();
        prop_assume!((m - 1.0).abs() > 1e-3);
        let reduced = schur_reduce(&p).unwrap();
        let mr = if reduced.values().iter().any(|v| !v.is_finite()) {
            f64::INFINITY
        } else {
            minimal_norm(&reduced, DEFAULT_REL_TOL).unwrap()
        };
        prop_assert_eq!(m < 1.0, mr <= 1.0, "m = {}, reduced = {}", m, mr);
    }
}
