use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use adsflat_bench::{grid, lifted_pair, wavy_front};
use adsflat_core::fronts::prepare;
use adsflat_core::lift::asymptotic_lift;
use adsflat_core::selftest::{algebra_suite, DEFAULT_SEED};
use adsflat_core::{synthesize, verify_patch, Tolerances};

fn lift(c: &mut Criterion) {
    let front = prepare(&wavy_front(0.6, 0.0, 2.2)).unwrap();
    c.bench_function("lift/wavy", |b| b.iter(|| asymptotic_lift(black_box(&front), 1).unwrap()));
}

fn surface(c: &mut Criterion) {
    let (a1, a2) = lifted_pair();
    let mut g = c.benchmark_group("synthesize");
    for n in [51, 101, 201] {
        let grid = grid(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &grid, |b, grid| b.iter(|| synthesize(&a1, &a2, grid).unwrap()));
    }
    g.finish();

    let patch = synthesize(&a1, &a2, &grid(201)).unwrap();
    let tol = Tolerances::default();
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("201", |b| b.iter(|| verify_patch(black_box(&patch), &tol).unwrap()));
    g.finish();
}

fn algebra(c: &mut Criterion) {
    c.bench_function("algebra_suite/1e4", |b| b.iter(|| algebra_suite(10_000, DEFAULT_SEED)));
}

criterion_group!(benches, lift, surface, algebra);
criterion_main!(benches);
