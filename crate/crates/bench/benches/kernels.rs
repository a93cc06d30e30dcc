//! Benchmarks for the hot kernels: partition tables, generating-function
//! dispersion at survey-table magnitudes, big-binomial certificates, the
//! axiom scan, and the character oracle.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use wmas_core::certify::{master_test, reproduce_table, sz_empirical_check, Regime};
use wmas_core::combinat::{binomial, partition_counts_upto};
use wmas_core::dispersion::lee_dispersion;
use wmas_core::scheme::{build_scheme, verify_axioms, SchemeFamilyParams};

fn bench_combinat(c: &mut Criterion) {
    c.bench_function("partition_counts_upto_500", |b| {
        b.iter(|| partition_counts_upto(black_box(500)))
    });
    c.bench_function("binomial_112_32", |b| {
        b.iter(|| binomial(black_box(112), black_box(32)))
    });
}

fn bench_dispersion(c: &mut Criterion) {
    c.bench_function("lee_dispersion_q8_n91_e90", |b| {
        b.iter(|| lee_dispersion(black_box(8), black_box(91), black_box(90)))
    });
    c.bench_function("reproduce_table_3", |b| {
        b.iter(|| reproduce_table(3).unwrap())
    });
}

fn bench_certify(c: &mut Criterion) {
    let family = SchemeFamilyParams::Sumrank {
        q: 2,
        blocks: vec![(32, 32); 80],
    };
    c.bench_function("master_test_sumrank_t80_e32", |b| {
        b.iter(|| master_test(black_box(&family), 32, Regime::Tables).unwrap())
    });
    c.bench_function("sz_check_2vars_deg4_s10_x5", |b| {
        b.iter(|| sz_empirical_check(2, 4, 10, 5, 1))
    });
}

fn bench_scheme(c: &mut Criterion) {
    c.bench_function("build_lee_5_3", |b| {
        b.iter(|| build_scheme(&SchemeFamilyParams::Lee { q: 5, n: 3 }).unwrap())
    });
    let lee52 = build_scheme(&SchemeFamilyParams::Lee { q: 5, n: 2 }).unwrap();
    c.bench_function("verify_axioms_lee_5_2", |b| {
        b.iter(|| verify_axioms(black_box(&lee52)).unwrap())
    });
    c.bench_function("eigen_table_lee_5_2", |b| {
        b.iter(|| lee52.eigen_table().unwrap())
    });
}

criterion_group!(
    benches,
    bench_combinat,
    bench_dispersion,
    bench_certify,
    bench_scheme
);
criterion_main!(benches);
