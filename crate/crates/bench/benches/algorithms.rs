use criterion::{criterion_group, criterion_main, Criterion};
use mdl_bench::instance;
use mdl_core::algos::{run_fast, run_finite, run_mid, run_personalized, Constants};
use mdl_core::SeededRng;
use std::hint::black_box;

fn algorithms(c: &mut Criterion) {
    let inst = instance(8, 4, 24);
    let k = Constants::default();
    let mut group = c.benchmark_group("run");
    group.sample_size(10);
    group.bench_function("fast", |b| {
        b.iter(|| run_fast(black_box(&inst), 0.2, 0.25, 0.2, &k, &mut SeededRng::new(1)).unwrap())
    });
    group.bench_function("finite", |b| {
        b.iter(|| run_finite(black_box(&inst), 0.2, 0.2, &k, &mut SeededRng::new(1)).unwrap())
    });
    group.bench_function("mid", |b| {
        b.iter(|| run_mid(black_box(&inst), 0.2, 0.2, &k, &mut SeededRng::new(1)).unwrap())
    });
    group.bench_function("personalized", |b| {
        b.iter(|| run_personalized(black_box(&inst), 0.2, 0.2, &k, &mut SeededRng::new(1)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, algorithms);
criterion_main!(benches);
