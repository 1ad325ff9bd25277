use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orbistar_bench::{dense_element, dense_poly};
use orbistar_core::deformation::{circle_product, phi_via_hpt};
use orbistar_core::verify::associativity_random_subset;
use orbistar_core::{moyal_star, phi};
use std::hint::black_box;

fn moyal(c: &mut Criterion) {
    let mut g = c.benchmark_group("moyal");
    for d in [2, 4, 6] {
        let p = dense_poly(d);
        g.bench_with_input(BenchmarkId::from_parameter(d), &p, |b, p| {
            b.iter(|| moyal_star(black_box(p), black_box(p)))
        });
    }
    g.finish();
}

fn phi_maps(c: &mut Criterion) {
    let mut g = c.benchmark_group("phi");
    let p = dense_poly(3);
    for n in 1..=3 {
        g.bench_with_input(BenchmarkId::new("uv", n), &n, |b, &n| {
            b.iter(|| phi(n, black_box(&p), black_box(&p)))
        });
        g.bench_with_input(BenchmarkId::new("hpt", n), &n, |b, &n| {
            b.iter(|| phi_via_hpt(n, black_box(&p), black_box(&p)).unwrap())
        });
    }
    g.finish();
}

fn circle(c: &mut Criterion) {
    let mut g = c.benchmark_group("circle");
    for d in [2, 3, 4] {
        let x = dense_element(d);
        g.bench_with_input(BenchmarkId::from_parameter(d), &x, |b, x| {
            b.iter(|| circle_product(black_box(x), black_box(x)))
        });
    }
    g.sample_size(10);
    g.bench_function("assoc-subset-500", |b| {
        b.iter(|| assert!(associativity_random_subset(5, 500, 7).passed()))
    });
    g.finish();
}

criterion_group!(benches, moyal, phi_maps, circle);
criterion_main!(benches);
