use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::rngs::StdRng;
use rand::SeedableRng;

use toric_kato::degen::nakamura_fan;
use toric_kato::fixtures;
use toric_kato::invariants::{curve_census, invariant_report};
use toric_kato::iso::{find_equivariant_iso, IsoOptions};
use toric_kato::kato::perron;
use toric_kato::linalg::{hnf, snf, IntMatrix};
use toric_kato::random::{random_kato_data, random_kato_matrix};

fn linear_algebra(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(0);
    let matrices: Vec<IntMatrix> = (0..16).map(|_| random_kato_matrix(4, 9, &mut rng)).collect();
    c.bench_function("snf 4x4", |b| b.iter(|| matrices.iter().map(|m| snf(black_box(m)).rank()).sum::<usize>()));
    c.bench_function("hnf 4x4", |b| b.iter(|| matrices.iter().map(|m| hnf(black_box(m)).pivots.len()).sum::<usize>()));
}

fn fans(c: &mut Criterion) {
    let fig1 = fixtures::data("fig1").unwrap();
    let completed = fig1.fan().complete_to_pn().unwrap();
    c.bench_function("projectivity of completed fig1", |b| b.iter(|| black_box(&completed).is_projective().is_some()));
    c.bench_function("random modification n=3", |b| {
        let mut rng = StdRng::seed_from_u64(1);
        b.iter(|| random_kato_data(3, 4, &mut rng))
    });
}

fn kato(c: &mut Criterion) {
    let fig1 = fixtures::data("fig1").unwrap();
    c.bench_function("perron fig1", |b| b.iter(|| perron(black_box(fig1.kato()))));
    c.bench_function("curve census fig1", |b| b.iter(|| curve_census(black_box(&fig1), 3)));
    let fig2 = fixtures::data("fig2").unwrap();
    c.bench_function("invariant report fig2", |b| b.iter(|| invariant_report(black_box(&fig2), 3)));
}

fn isomorphism(c: &mut Criterion) {
    let a = fixtures::data("inoue_a").unwrap();
    let b_ = fixtures::data("inoue_b").unwrap();
    let fig3 = fixtures::data("fig3").unwrap();
    let opts = IsoOptions::default();
    c.bench_function("iso inoue pair", |b| b.iter(|| find_equivariant_iso(&a, &b_, &opts).answer));
    c.bench_function("iso fig3 with itself", |b| b.iter(|| find_equivariant_iso(&fig3, &fig3, &opts).answer));
}

fn degenerations(c: &mut Criterion) {
    let ih = fixtures::data("inoue_hirzebruch").unwrap();
    let fig2 = fixtures::data("fig2").unwrap();
    let mut group = c.benchmark_group("nakamura");
    group.sample_size(10);
    group.bench_function("inoue-hirzebruch window 3", |b| b.iter(|| nakamura_fan(&ih, 3).unwrap()));
    group.bench_function("fig2 window 1", |b| b.iter(|| nakamura_fan(&fig2, 1).unwrap()));
    group.finish();
}

criterion_group!(benches, linear_algebra, fans, kato, isomorphism, degenerations);
criterion_main!(benches);
