//! Criterion groups for the solvers and the scan primitives. Run with
//! `cargo bench -p linrec-bench`.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion, Throughput};
use linrec::{inclusive_scan, log_cum_sum_exp, solve, ScanEngine, SolveMethod};
use linrec_cli::{generate, Preset};

pub const SIZES: [usize; 3] = [1 << 12, 1 << 16, 1 << 20];

pub fn solvers(c: &mut Criterion) {
    let engine = ScanEngine::default();
    let mut group = c.benchmark_group("solve");
    for n in SIZES {
        let series = generate(n, 7, Preset::PositiveDecay);
        group.throughput(Throughput::Elements(n as u64));
        for method in SolveMethod::ALL {
            // direct rejects long series once the running product underflows
            if solve(&series, method, &engine).is_err() {
                continue;
            }
            group.bench_with_input(BenchmarkId::new(method.as_str(), n), &series, |b, s| {
                b.iter(|| solve(black_box(s), method, &engine).unwrap())
            });
        }
    }
    group.finish();
}

pub fn workers(c: &mut Criterion) {
    let n = 1 << 20;
    let series = generate(n, 7, Preset::MixedSign);
    let max = ScanEngine::default().worker_count();
    let mut group = c.benchmark_group("pairscan_workers");
    group.throughput(Throughput::Elements(n as u64));
    let mut w = 1;
    while w <= max.max(1) {
        let engine = ScanEngine::with_workers(w).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(w), &series, |b, s| {
            b.iter(|| solve(black_box(s), SolveMethod::Pairscan, &engine).unwrap())
        });
        w *= 2;
    }
    group.finish();
}

pub fn primitives(c: &mut Criterion) {
    let engine = ScanEngine::default();
    let n = 1 << 20;
    let xs: Vec<f64> = (0..n).map(|i| ((i % 97) as f64 - 48.0) / 8.0).collect();
    let mut group = c.benchmark_group("scan");
    group.throughput(Throughput::Elements(n as u64));
    group.bench_function("inclusive_scan_add", |b| {
        b.iter(|| inclusive_scan(black_box(&xs), |p, q| p + q, &engine))
    });
    group.bench_function("log_cum_sum_exp", |b| {
        b.iter(|| log_cum_sum_exp(black_box(&xs), &engine).unwrap())
    });
    group.finish();
}
