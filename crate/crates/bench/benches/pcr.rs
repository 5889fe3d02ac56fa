use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pcr_core::arrangement::{cyclic, non_pappus_9};
use pcr_core::constructions::{build_ga, expand_drawing};
use pcr_core::graph::complete;
use pcr_core::oracle::{crossing_number, OracleOptions};
use pcr_core::{find_extension, fixtures, scan_clams};
use std::hint::black_box;

fn ga(c: &mut Criterion) {
    let arr = non_pappus_9();
    let mut g = c.benchmark_group("ga_build");
    for m in 1..=3u64 {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| build_ga(black_box(&arr), m).unwrap())
        });
    }
    g.finish();
}

fn expand(c: &mut Criterion) {
    let ga = build_ga(&cyclic(2), 2).unwrap();
    c.bench_function("expand_ga_2_2", |b| b.iter(|| expand_drawing(black_box(&ga.drawing)).unwrap()));
}

fn extension(c: &mut Criterion) {
    let k5 = fixtures::straight_k5();
    c.bench_function("extend_k5", |b| b.iter(|| find_extension(black_box(&k5), 2_000_000).unwrap()));
    let mut g = c.benchmark_group("extend_ga");
    g.sample_size(10);
    for s in 2..=3 {
        let ga = build_ga(&cyclic(s), 1).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(s), &ga.drawing, |b, d| {
            b.iter(|| find_extension(d, 5_000_000).unwrap())
        });
    }
    g.finish();
}

fn clams(c: &mut Criterion) {
    let ga = build_ga(&non_pappus_9(), 1).unwrap();
    c.bench_function("scan_clams_non_pappus", |b| b.iter(|| scan_clams(black_box(&ga.drawing))));
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    for n in 5..=6 {
        let k = complete(n);
        g.bench_with_input(BenchmarkId::new("complete", n), &k, |b, k| {
            b.iter(|| crossing_number(k, &OracleOptions::default()))
        });
    }
    g.finish();
}

criterion_group!(benches, ga, expand, extension, clams, oracle);
criterion_main!(benches);
