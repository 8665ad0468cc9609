//! Hot paths: iteration with normalization, gcd of dense forms, the
//! Macaulay indeterminacy test, monomial power searches, and triangular
//! linearization over a cyclotomic field.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use evreg_bench::{cremona, dense_quadratic};
use evreg_core::monomial::{Fan, IntMatrix2, MonomialMap};
use evreg_core::mpoly::{gcd_pair, has_common_projective_zero, HomogeneousTriple};
use evreg_core::numfield::{rat, FieldElement, NumberField};
use evreg_core::DEFAULT_DEGREE_CAP;
use evreg_core::skewprod::{first_linear_iterate, TriangularMap};
use evreg_core::upoly::UPoly;

fn bench_iteration(c: &mut Criterion) {
    let q = dense_quadratic();
    c.bench_function("iterate_dense_quadratic_n4", |b| {
        b.iter(|| black_box(&q).iterate_capped(4, DEFAULT_DEGREE_CAP).unwrap())
    });
    let s = cremona();
    c.bench_function("first_regular_cremona", |b| {
        b.iter(|| black_box(&s).first_regular_iterate_default().unwrap())
    });
}

fn bench_gcd(c: &mut Criterion) {
    let q = dense_quadratic();
    let it = q.iterate_capped(3, DEFAULT_DEGREE_CAP).unwrap();
    let f = it.forms();
    c.bench_function("gcd_coprime_octics", |b| {
        b.iter(|| gcd_pair(black_box(&f[0]), black_box(&f[1])).unwrap())
    });
    let g = f[0].mul(&f[1]).unwrap();
    let h = f[0].mul(&f[2]).unwrap();
    c.bench_function("gcd_planted_octic_factor", |b| {
        b.iter(|| gcd_pair(black_box(&g), black_box(&h)).unwrap())
    });
}

fn bench_macaulay(c: &mut Criterion) {
    let s = cremona();
    let f = s.forms();
    let triple = HomogeneousTriple::new(f[0].clone(), f[1].clone(), f[2].clone()).unwrap();
    c.bench_function("macaulay_cremona_base_locus", |b| {
        b.iter(|| has_common_projective_zero(black_box(&triple)).unwrap())
    });
}

fn bench_monomial(c: &mut Criterion) {
    let field = NumberField::rational();
    let one = FieldElement::from_rational(&field, rat(1));
    let m = MonomialMap::new(
        IntMatrix2::from_rows([[3, 1], [-3, 3]]).unwrap(),
        [one.clone(), one],
    )
    .unwrap();
    let fan = Fan::p2();
    c.bench_function("first_extendable_power_spiral", |b| {
        b.iter(|| {
            evreg_core::monomial::first_extendable_power(black_box(&m), black_box(&fan), 12)
                .unwrap()
        })
    });
}

fn bench_triangular(c: &mut Criterion) {
    let field = NumberField::extension(vec![rat(1), rat(0), rat(-1), rat(0), rat(1)]).unwrap();
    let a = FieldElement::from_rational(&field, rat(1));
    let cgen = FieldElement::generator(&field);
    let q = UPoly::new(&field, vec![
        FieldElement::from_rational(&field, rat(0)),
        FieldElement::from_rational(&field, rat(0)),
        FieldElement::from_rational(&field, rat(1)),
    ]);
    let t = TriangularMap::new(a, cgen, q).unwrap();
    c.bench_function("first_linear_iterate_order12", |b| {
        b.iter(|| first_linear_iterate(black_box(&t), 24).unwrap())
    });
}

criterion_group!(
    benches,
    bench_iteration,
    bench_gcd,
    bench_macaulay,
    bench_monomial,
    bench_triangular
);
criterion_main!(benches);
