use addim_core::constructions::{cube, powers_of_three};
use addim_core::{is_dissociated_signcomb, is_dissociated_subsetsum, span, AdditiveSet};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn deciders(c: &mut Criterion) {
    let mut g = c.benchmark_group("dissociated");
    for k in [8usize, 12, 16] {
        let p = powers_of_three(k).unwrap();
        g.bench_with_input(BenchmarkId::new("subset-sum", k), &p, |b, p| {
            b.iter(|| is_dissociated_subsetsum(black_box(p)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("sign-combination", k), &p, |b, p| {
            b.iter(|| is_dissociated_signcomb(black_box(p)).unwrap())
        });
    }
    // vector keys
    let q = cube(4).unwrap();
    let nonzero = AdditiveSet::new(4, q.elements()[1..].to_vec()).unwrap();
    g.bench_function("subset-sum/cube4", |b| {
        b.iter(|| is_dissociated_subsetsum(black_box(&nonzero)).unwrap())
    });
    g.finish();
}

fn spans(c: &mut Criterion) {
    let p = powers_of_three(10).unwrap();
    c.bench_function("span/p3-10", |b| b.iter(|| span(black_box(&p)).unwrap()));
}

criterion_group!(benches, deciders, spans);
criterion_main!(benches);
