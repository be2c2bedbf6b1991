use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orsep::bounds::exact_or2;
use orsep::circuits::depth3_complement_circuit;
use orsep::matrices::{count_2_rectangles, is_k_free};
use orsep_bench::{brown, random_square};

fn freeness(c: &mut Criterion) {
    let mut g = c.benchmark_group("is_k_free");
    for p in [5, 7] {
        let a = brown(p);
        g.bench_with_input(BenchmarkId::new("brown_k3", p), &a, |b, a| {
            b.iter(|| is_k_free(black_box(a), 3).unwrap())
        });
    }
    g.finish();
}

fn rectangles(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_2_rectangles");
    for p in [7, 11] {
        let a = brown(p);
        g.bench_with_input(BenchmarkId::new("brown", p), &a, |b, a| {
            b.iter(|| count_2_rectangles(black_box(a)).unwrap())
        });
    }
    g.finish();
}

fn reachability(c: &mut Criterion) {
    let mut g = c.benchmark_group("implemented_matrix");
    g.sample_size(10);
    for p in [3, 5] {
        let circuit = depth3_complement_circuit(&brown(p)).unwrap();
        g.bench_with_input(
            BenchmarkId::new("depth3_brown", p),
            &circuit,
            |b, circuit| b.iter(|| circuit.implemented_matrix().unwrap()),
        );
    }
    g.finish();
}

fn depth2(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact_or2");
    for m in [4, 5, 6] {
        let a = random_square(m, 0.6);
        g.bench_with_input(BenchmarkId::new("random_0.6", m), &a, |b, a| {
            b.iter(|| exact_or2(black_box(a), None).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, freeness, rectangles, reachability, depth2);
criterion_main!(benches);
