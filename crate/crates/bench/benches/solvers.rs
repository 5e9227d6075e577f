use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minterp_core::ball::{g3, phi, sphere_sup, ScanOptions};
use minterp_core::disk::{minimal_norm, solve_extremal, DiskProblem, DEFAULT_REL_TOL};
use minterp_core::measure::{arc_measure_on_phi, min_nodes_for_degree, TruncatedH2};
use minterp_core::rng::{blaschke, separated_points, stream};
use minterp_core::C64;

fn problem(n: usize) -> DiskProblem {
    let mut r = stream(1, n as u64);
    let b = blaschke(&mut r, n - 1, 0.9);
    let pts = separated_points(&mut r, n, 0.9, 0.05);
    let vals = pts.iter().map(|&z| b.eval(z) * 0.8).collect();
    DiskProblem::new(pts, vals).unwrap()
}

fn disk(c: &mut Criterion) {
    let mut group = c.benchmark_group("disk");
    for n in [2, 4, 6] {
        let p = problem(n);
        group.bench_with_input(BenchmarkId::new("minimal_norm", n), &p, |b, p| {
            b.iter(|| minimal_norm(black_box(p), DEFAULT_REL_TOL).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("solve_extremal", n), &p, |b, p| {
            b.iter(|| solve_extremal(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn sphere(c: &mut Criterion) {
    let mut group = c.benchmark_group("sphere_sup");
    group.sample_size(10);
    let f = g3();
    for grid_n in [32, 64, 128] {
        group.bench_with_input(
            BenchmarkId::from_parameter(grid_n),
            &grid_n,
            |b, &grid_n| {
                b.iter(|| {
                    sphere_sup(
                        black_box(&f),
                        ScanOptions {
                            grid_n,
                            polish: true,
                        },
                    )
                    .unwrap()
                })
            },
        );
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);
    for d in [8, 16, 32] {
        let m = arc_measure_on_phi(min_nodes_for_degree(d)).unwrap();
        group.bench_with_input(BenchmarkId::new("space", d), &d, |b, &d| {
            b.iter(|| TruncatedH2::new(black_box(&m), d).unwrap())
        });
        let space = TruncatedH2::new(&m, d).unwrap();
        let p = phi(C64::new(0.5, 0.0));
        group.bench_with_input(BenchmarkId::new("kernel_at", d), &p, |b, p| {
            b.iter(|| space.kernel_at(black_box(p)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, disk, sphere, kernels);
criterion_main!(benches);
