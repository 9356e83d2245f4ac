use std::hint::black_box;

use algvol_core::oracle::{pi_demo, riemann_volume_r1, RiemannSchedule};
use algvol_core::rational::int;
use algvol_core::{
    catalog_field, cutkosky_volume, min_poly_combine, pq_demo, primitive_search, resultant, AlgebraicNumber,
    CatalogKind, CombineOp, ConstructionInput, Interval, Polynomial,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn algebra(c: &mut Criterion) {
    let f: Polynomial = "x^6-3*x^5+2*x^3-7*x+1".parse().unwrap();
    let g: Polynomial = "2*x^5+x^4-x^2+5".parse().unwrap();
    c.bench_function("resultant deg 6 x deg 5", |b| b.iter(|| resultant(black_box(&f), black_box(&g))));

    let heptagon: Polynomial = "x^3+x^2-2*x-1".parse().unwrap();
    let a = AlgebraicNumber::new(&heptagon, Interval::new(int(1), int(2))).unwrap();
    let s2 = AlgebraicNumber::new(&"x^2-2".parse().unwrap(), Interval::new(int(1), int(2))).unwrap();
    c.bench_function("combine product 3 x 2", |b| {
        b.iter(|| min_poly_combine(black_box(&a), black_box(&s2), CombineOp::Product))
    });
    c.bench_function("combine sum 3 x 3", |b| {
        b.iter(|| min_poly_combine(black_box(&a), black_box(&a), CombineOp::Sum))
    });
}

fn volumes(c: &mut Criterion) {
    let q2 = catalog_field(CatalogKind::Quadratic(2)).unwrap();
    c.bench_function("volume Q(sqrt 2)", |b| b.iter(|| cutkosky_volume(&ConstructionInput::new(q2.generator()))));

    let h11 = catalog_field(CatalogKind::RealCyclotomic(11)).unwrap();
    let alpha = primitive_search(&h11, 3).unwrap().element;
    c.bench_function("search real cyclotomic 11", |b| b.iter(|| primitive_search(black_box(&h11), 3)));
    c.bench_function("volume real cyclotomic 11", |b| {
        b.iter(|| cutkosky_volume(&ConstructionInput::new(alpha.clone())))
    });

    let mut slow = c.benchmark_group("products");
    slow.sample_size(10);
    slow.bench_function("pq 3 5", |b| b.iter(|| pq_demo(3, 5)));
    slow.finish();
}

fn oracles(c: &mut Criterion) {
    let q2 = catalog_field(CatalogKind::Quadratic(2)).unwrap();
    let r = cutkosky_volume(&ConstructionInput::new(q2.generator())).unwrap();
    let schedule = RiemannSchedule::new(16, 1024).unwrap();
    c.bench_function("riemann sums to 1024", |b| {
        b.iter(|| riemann_volume_r1(&r.m_alpha, Some(&r.beta), r.t0, schedule, Some(&r.volume)))
    });
    c.bench_function("pi demo N=5", |b| b.iter(|| pi_demo(black_box(5), 1e-8)));
}

criterion_group!(benches, algebra, volumes, oracles);
criterion_main!(benches);
