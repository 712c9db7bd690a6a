use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use kr_bench::root_system;
use kr_core::charlib::{brute_tensor_decompose, dominant_mults, tensor_decompose, weight_mults};
use kr_core::krset::graded_character;
use kr_core::{Family, Limits, Weight};

fn freudenthal(c: &mut Criterion) {
    let b4 = root_system(Family::B, 4);
    let lam = Weight(vec![1, 1, 0, 1]);
    c.bench_function("freudenthal B4 [1,1,0,1] dominant", |b| b.iter(|| dominant_mults(&b4, black_box(&lam)).unwrap()));
    let l = Limits::default();
    c.bench_function("freudenthal B4 [1,1,0,1] full", |b| b.iter(|| weight_mults(&b4, black_box(&lam), &l).unwrap()));
}

fn klimyk(c: &mut Criterion) {
    let c3 = root_system(Family::C, 3);
    let l = Limits::default();
    let (lam, mu) = (Weight(vec![2, 1, 0]), Weight(vec![0, 1, 1]));
    c.bench_function("klimyk C3 [2,1,0] x [0,1,1]", |b| b.iter(|| tensor_decompose(&c3, black_box(&lam), &mu, &l).unwrap()));
    c.bench_function("brute C3 [2,1,0] x [0,1,1]", |b| {
        b.iter(|| brute_tensor_decompose(&c3, black_box(&lam), &mu, &l).unwrap())
    });
}

fn graded(c: &mut Criterion) {
    let d5 = root_system(Family::D, 5);
    c.bench_function("graded character D5 node 3 level 6", |b| b.iter(|| graded_character(&d5, 3, black_box(6)).unwrap()));
}

criterion_group!(benches, freudenthal, klimyk, graded);
criterion_main!(benches);
