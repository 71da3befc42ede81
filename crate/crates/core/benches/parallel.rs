//! Serial vs data-parallel execution of the hot loops.
//!
//! Each benchmark runs once inside a one-thread rayon pool and once inside a
//! pool with every available core. Built with `--no-default-features`, both
//! variants take the sequential fallback and should time the same.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use spinvec::linalg::Observable;
use spinvec::{coupled_state, sample, total_component, vector_sum_report, Axis, SpinSystem};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let all = std::thread::available_parallelism().map_or(1, |n| n.get());
    vec![
        (
            "serial",
            rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap(),
        ),
        (
            "parallel",
            rayon::ThreadPoolBuilder::new().num_threads(all).build().unwrap(),
        ),
    ]
}

fn bench_sampling(c: &mut Criterion) {
    let system = SpinSystem::new(10).unwrap();
    let state = coupled_state(system, 4, 0, None).unwrap();
    let n_samples = 200_000;
    let mut group = c.benchmark_group("sample");
    group.throughput(Throughput::Elements(n_samples as u64));
    group.sample_size(20);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, n_samples), |b| {
            b.iter(|| pool.install(|| sample(system, state.vector(), Axis::X, n_samples, 7).unwrap()))
        });
    }
    group.finish();
}

fn bench_total_component(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_total_jx");
    for n in [10usize, 14] {
        let system = SpinSystem::new(n).unwrap();
        let state = coupled_state(system, 2, 0, None).unwrap();
        let jx = total_component(Axis::X, system);
        group.throughput(Throughput::Elements(system.dim() as u64));
        for (name, pool) in pools() {
            group.bench_function(BenchmarkId::new(name, n), |b| {
                b.iter(|| pool.install(|| jx.apply(black_box(state.vector().amplitudes())).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_report(c: &mut Criterion) {
    let system = SpinSystem::new(12).unwrap();
    let state = coupled_state(system, 2, 0, None).unwrap();
    let mut group = c.benchmark_group("vector_sum_report");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, 12), |b| {
            b.iter(|| pool.install(|| vector_sum_report(black_box(&state)).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sampling, bench_total_component, bench_report);
criterion_main!(benches);
