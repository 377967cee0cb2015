use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fermilie::lie::{lie_closure, structure_profile};
use fermilie::quasifree::{matrix_closure, tensor_square_controllable};
use fermilie::scalar::Q;
use fermilie::ti_quasifree::{gap_experiment, qd_structure, random_gap_coefficients};
use fermilie::translation::{bounded_range_algebra, nn_witness, Kind};
use fermilie_bench::{family, t_family};
use std::hint::black_box;

fn closures(c: &mut Criterion) {
    let mut g = c.benchmark_group("lie_closure");
    for d in [4usize, 6, 8] {
        let gens = family("w123", d);
        g.bench_with_input(BenchmarkId::new("w123", d), &gens, |b, gens| b.iter(|| lie_closure(black_box(gens), None)));
    }
    let gens = family("w1234", 4);
    g.bench_function("w1234/4", |b| b.iter(|| lie_closure(black_box(&gens), None)));
    g.sample_size(10);
    g.bench_function("spin_table_cell/L4_M2", |b| {
        b.iter(|| bounded_range_algebra::<Q>(black_box(4), 2, Kind::Spin, None))
    });
    g.finish();
}

fn structure(c: &mut Criterion) {
    let space = lie_closure(&family("w1234", 4), None).unwrap();
    c.bench_function("structure_profile/w1234_4", |b| b.iter(|| structure_profile(black_box(&space))));
    let ts = t_family("w12", 6);
    c.bench_function("matrix_closure/w12_6", |b| b.iter(|| matrix_closure(black_box(&ts))));
    let ts = t_family("w123", 5);
    c.bench_function("tensor_square/w123_5", |b| b.iter(|| tensor_square_controllable(black_box(&ts))));
    c.bench_function("qd_structure/d10", |b| b.iter(|| qd_structure::<f64>(black_box(10), false, None)));
}

fn traces_and_gaps(c: &mut Criterion) {
    c.bench_function("nn_witness/9", |b| b.iter(|| nn_witness(black_box(9))));
    let (a, bb) = random_gap_coefficients(3, 1);
    c.bench_function("gap/d200_M3", |b| b.iter(|| gap_experiment(black_box(200), 3, &a, &bb)));
}

criterion_group!(benches, closures, structure, traces_and_gaps);
criterion_main!(benches);
