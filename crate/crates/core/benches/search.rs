use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wps_core::catalog::analyze;
use wps_core::cyclicq::{dual_sets, CyclicQuotient};
use wps_core::exactmath::gcd;
use wps_core::quasihom::WeightSystem;
use wps_core::smoothing::{check_canonical_modification, search_smoothings, SmoothingModel};
use wps_core::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn search(c: &mut Criterion) {
    let ws = WeightSystem::new(vec![33, 22, 6], 66).unwrap();
    let an = analyze(&ws).unwrap();
    let support = an.support().unwrap();
    let mut g = c.benchmark_group("search_e20");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| search_smoothings(&support, &an.dual_sets, 1..=66, exec).unwrap())
        });
    }
    g.finish();
}

fn ishii(c: &mut Criterion) {
    let sm = SmoothingModel::new(&WeightSystem::new(vec![4, 3, 3], 12).unwrap(), 1).unwrap();
    let mut g = c.benchmark_group("ishii_v18_bound_24");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_canonical_modification(&sm, 24, exec).unwrap())
        });
    }
    g.finish();
}

fn duals(c: &mut Criterion) {
    let bases: Vec<Vec<CyclicQuotient>> = (2..=60)
        .map(|r| {
            (1..r)
                .filter(|&b| gcd(b, r) == 1)
                .take(3)
                .map(|b| CyclicQuotient::surface(r, b).unwrap())
                .collect()
        })
        .collect();
    let mut g = c.benchmark_group("dual_sets_r_le_60");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exec.map(&bases, |bs| dual_sets(black_box(bs)).unwrap().len()))
        });
    }
    g.finish();
}

criterion_group!(benches, search, ishii, duals);
criterion_main!(benches);
