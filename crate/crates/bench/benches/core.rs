use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ordinarity_core::artin_schreier::census_analytic;
use ordinarity_core::dirichlet::{cezb_constant, phi_at_1};
use ordinarity_core::poly_fq::{enumerate_monic, factor};
use ordinarity_core::prank_oracle::{cross_validate, Cover};
use ordinarity_core::superelliptic::{random_covers, tuple_counts_gf};
use ordinarity_core::FieldSpec;

fn factoring(c: &mut Criterion) {
    let f = FieldSpec::from_q(4).unwrap();
    let polys: Vec<_> = enumerate_monic(&f, 6).step_by(37).collect();
    c.bench_function("factor degree-6 polys over F_4", |b| {
        b.iter(|| {
            for m in &polys {
                black_box(factor(m, &f));
            }
        })
    });
}

fn euler_products(c: &mut Criterion) {
    c.bench_function("phi(1) at q=2", |b| b.iter(|| phi_at_1(black_box(2)).unwrap()));
    c.bench_function("cezb constant at q=4", |b| b.iter(|| cezb_constant(black_box(4)).unwrap()));
}

fn as_census(c: &mut Criterion) {
    c.bench_function("analytic AS census q=2 m<=40", |b| {
        b.iter(|| census_analytic(black_box(2), 40, true).unwrap())
    });
}

fn se_tuple_gf(c: &mut Criterion) {
    c.bench_function("tuple GF q=2 r=4 total<=12", |b| {
        b.iter(|| tuple_counts_gf(black_box(2), 4, 12).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let f = FieldSpec::from_q(2).unwrap();
    let covers = random_covers(&f, 3, 6, 8, 1).unwrap();
    c.bench_function("point-count oracle, 8 n=3 covers over F_2", |b| {
        b.iter(|| {
            for cv in &covers {
                black_box(cross_validate(&Cover::Superelliptic(cv.clone())).unwrap());
            }
        })
    });
}

criterion_group!(benches, factoring, euler_products, as_census, se_tuple_gf, oracle);
criterion_main!(benches);
