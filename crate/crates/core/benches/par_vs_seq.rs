//! Parallel vs sequential throughput on the two heaviest kernels:
//! area quadrature and the annulus sup-bound trial ensemble.
//!
//! `cargo bench -p teichwp` measures the default (parallel) build;
//! `cargo bench -p teichwp --no-default-features` measures the sequential
//! fallback. Within one build, the `*_indexed` pairs compare the pool
//! against a plain loop directly.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use teichwp::{quad, verify};

fn bench_integrate(c: &mut Criterion) {
    let mut group = c.benchmark_group("integrate");
    for &(nr, nt) in &[(64usize, 256usize), (128, 512)] {
        let rule = quad::disk_rule(nr, nt, 1.0).unwrap();
        let f = |z: Complex64| {
            let w = 1.0 - z.norm_sqr();
            Complex64::new(w * w * (3.0 * z.re).cos(), w * (2.0 * z.im).sin())
        };
        group.bench_with_input(
            BenchmarkId::new("parallel_map", format!("{nr}x{nt}")),
            &rule,
            |b, rule| b.iter(|| quad::integrate(rule, f).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential_map", format!("{nr}x{nt}")),
            &rule,
            |b, rule| b.iter(|| quad::integrate_seq(rule, f).unwrap()),
        );
    }
    group.finish();
}

fn bench_bound_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("annulus_bound_trials");
    group.sample_size(10);
    group.bench_function("parallel_trials_32", |b| {
        b.iter(|| verify::bound_trials(2.0, 1.5, 32, 42, 32, 128).unwrap())
    });
    group.bench_function("sequential_trials_32", |b| {
        b.iter(|| verify::bound_trials_seq(2.0, 1.5, 32, 42, 32, 128).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_integrate, bench_bound_trials);
criterion_main!(benches);
