use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use stabctab_core::genfunc::{check_remark_identity, stable_perverse_table, HilbertBetti};
use stabctab_core::germ::{delta, milnor, shipped_corpus, tjurina};
use stabctab_core::nslattice::decompose;
use stabctab_core::perverse::{build_tower, solve_perverse};
use stabctab_core::{DivisorClass, LatticeModel, SurfaceTopology};

fn generating_functions(c: &mut Criterion) {
    let s = SurfaceTopology::ENRIQUES;
    let mut group = c.benchmark_group("genfunc");
    for order in [6u32, 12] {
        group.bench_with_input(BenchmarkId::new("perverse_table", order), &order, |b, &o| {
            b.iter(|| stable_perverse_table(black_box(&s), o).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("hilbert_betti", order), &order, |b, &o| {
            b.iter(|| HilbertBetti::new(black_box(&s), o).unwrap())
        });
    }
    group.bench_function("identity_12", |b| b.iter(|| check_remark_identity(black_box(&s), 12).unwrap()));
    group.finish();
}

fn recursion(c: &mut Criterion) {
    let s = SurfaceTopology::BIELLIPTIC;
    let tower = build_tower(&s, 10).unwrap();
    c.bench_function("perverse/build_tower_10", |b| b.iter(|| build_tower(black_box(&s), 10).unwrap()));
    c.bench_function("perverse/solve_10", |b| b.iter(|| solve_perverse(black_box(&tower)).unwrap()));
}

fn germs(c: &mut Criterion) {
    let mut group = c.benchmark_group("germ");
    for entry in shipped_corpus() {
        let g = entry.germ().unwrap();
        let branches = entry.branch_set().unwrap();
        group.bench_function(BenchmarkId::new("milnor", &entry.name), |b| b.iter(|| milnor(black_box(&g)).unwrap()));
        group.bench_function(BenchmarkId::new("tjurina", &entry.name), |b| b.iter(|| tjurina(black_box(&g)).unwrap()));
        group.bench_function(BenchmarkId::new("delta", &entry.name), |b| {
            b.iter(|| delta(black_box(&g), black_box(&branches)).unwrap())
        });
    }
    group.finish();
}

fn lattices(c: &mut Criterion) {
    let bielliptic = LatticeModel::preset("bielliptic-rank2").unwrap();
    let enriques = LatticeModel::preset("enriques-u-e8").unwrap();
    let mut group = c.benchmark_group("decompose");
    for k in [2i64, 5, 10] {
        let beta = DivisorClass::new(vec![k, k]);
        group.bench_with_input(BenchmarkId::new("bielliptic", k), &beta, |b, beta| {
            b.iter(|| decompose(black_box(&bielliptic), beta).unwrap())
        });
    }
    let mut coords = vec![0i64; 10];
    coords[0] = 2;
    let beta = DivisorClass::new(coords);
    group.sample_size(10);
    group.bench_function("enriques_2e", |b| b.iter(|| decompose(black_box(&enriques), &beta).unwrap()));
    group.finish();
}

criterion_group!(benches, generating_functions, recursion, germs, lattices);
criterion_main!(benches);
