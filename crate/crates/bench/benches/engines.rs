use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use defkt::numerics::{torus_moduli_map, SimDiagOptions};
use defkt::{cohomology, kdef, verify::consistency_suite};
use defkt::group::kdef_uncached;
use defkt_bench::{commuting_pair, products};

fn symbolic(c: &mut Criterion) {
    let mut group = c.benchmark_group("kdef");
    for (name, e) in products() {
        group.bench_function(name, |b| b.iter(|| kdef_uncached(black_box(&e)).unwrap()));
    }
    group.finish();

    let mut group = c.benchmark_group("cohomology");
    for (name, e) in products() {
        group.bench_function(name, |b| b.iter(|| cohomology(black_box(&e)).unwrap()));
    }
    group.finish();

    let mut group = c.benchmark_group("consistency_suite");
    for (name, e) in products() {
        kdef(&e).unwrap();
        group.bench_function(name, |b| b.iter(|| consistency_suite(black_box(&e)).unwrap()));
    }
    group.finish();
}

fn numeric(c: &mut Criterion) {
    let mut group = c.benchmark_group("torus_moduli_map");
    let opts = SimDiagOptions::default();
    for n in [2usize, 4, 8] {
        let (a, b) = commuting_pair(n, 1);
        group.bench_function(format!("n={n}"), |bench| {
            bench.iter(|| torus_moduli_map(black_box(&a), black_box(&b), &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, symbolic, numeric);
criterion_main!(benches);
