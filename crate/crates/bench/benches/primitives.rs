use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mdl_bench::{costs, erm_input, skewed_weights};
use mdl_core::cover::erm;
use mdl_core::online::{hedge_step_cost, project_capped};
use mdl_core::SimplexWeights;
use std::hint::black_box;

fn hedge(c: &mut Criterion) {
    let mut group = c.benchmark_group("hedge_step_cost");
    for d in [4usize, 64, 1024] {
        let w = SimplexWeights::uniform(d);
        let cost = costs(d, 1);
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, _| {
            b.iter(|| hedge_step_cost(black_box(&w), black_box(&cost), 0.1).unwrap())
        });
    }
    group.finish();
}

fn projection(c: &mut Criterion) {
    let mut group = c.benchmark_group("project_capped");
    for d in [4usize, 64, 1024] {
        let raw = skewed_weights(d);
        let cap = (2.0 / d as f64).min(1.0);
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, _| {
            b.iter(|| project_capped(black_box(&raw), cap).unwrap())
        });
    }
    group.finish();
}

fn erm_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("erm");
    for size in [16usize, 256, 4096] {
        let (class, batch) = erm_input(16, size, 200);
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| erm(black_box(&class), black_box(&batch)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, hedge, projection, erm_scan);
criterion_main!(benches);
