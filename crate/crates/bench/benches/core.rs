use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tiling_forge_bench::{
    golay_binary_lattice, golay_binary_splitting, golay_ternary_lattice, z51_problem,
};
use tiling_forge_core::ball::enumerate_ball;
use tiling_forge_core::lattice::{hermite_normal_form, smith_normal_form};
use tiling_forge_core::search::search_splitting;
use tiling_forge_core::{verify_splitting, BallParams, SplitMode};

fn ball(c: &mut Criterion) {
    let p = BallParams::new(12, 3, 2, 1).unwrap();
    c.bench_function("enumerate B(12,3,2,1)", |b| {
        b.iter(|| enumerate_ball(black_box(&p)).unwrap().len())
    });
}

fn normal_forms(c: &mut Criterion) {
    let l = golay_binary_lattice();
    c.bench_function("snf golay2 lattice", |b| {
        b.iter(|| smith_normal_form(black_box(l.generator())))
    });
    c.bench_function("hnf golay2 lattice", |b| {
        b.iter(|| hermite_normal_form(black_box(l.generator())))
    });
    let l = golay_ternary_lattice();
    c.bench_function("quotient golay3 lattice", |b| {
        b.iter(|| black_box(&l).quotient_group().unwrap())
    });
}

fn verify(c: &mut Criterion) {
    let sp = golay_binary_splitting();
    c.bench_function("verify golay2 splitting", |b| {
        b.iter(|| {
            verify_splitting(black_box(&sp), SplitMode::Full)
                .unwrap()
                .valid
        })
    });
}

fn search(c: &mut Criterion) {
    let prob = z51_problem();
    let mut group = c.benchmark_group("search");
    group.sample_size(20);
    group.bench_function("Z51 B(5,2,2,0)", |b| {
        b.iter(|| search_splitting(black_box(&prob)).unwrap().status)
    });
    group.finish();
}

criterion_group!(benches, ball, normal_forms, verify, search);
criterion_main!(benches);
