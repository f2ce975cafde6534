//! Measurements of the hot paths: gcd, brackets, closure, the
//! classifier, and the text round trip.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use rankone::classify::classify_rank_one;
use rankone::construct::{almost_abelian_example, sl2_example};
use rankone::poly::gcd;
use rankone::span::close_and_structure;
use rankone::textio::{parse_derivation, print_derivation};
use rankone_bench::{deriv, gcd_pair};

fn bench_gcd(c: &mut Criterion) {
    let (p, q) = gcd_pair();
    c.bench_function("gcd/planted-quartic-factor", |b| {
        b.iter(|| gcd(black_box(&p), black_box(&q)).expect("nonzero inputs"))
    });
}

fn bench_bracket(c: &mut Criterion) {
    let d1 = deriv("(x^3*y + z^2 - 4*x)*d/dx + (y^4 - x*z)*d/dy + (x + y + z)^3*d/dz", 3);
    let d2 = deriv("(z^3 - x^2*y^2)*d/dx + (x*y*z + 1)*d/dy + (y^2 - 3*z)*d/dz", 3);
    c.bench_function("bracket/degree-6-three-vars", |b| {
        b.iter(|| black_box(&d1).bracket(black_box(&d2)).expect("matching variables"))
    });
}

fn bench_closure(c: &mut Criterion) {
    let span = almost_abelian_example(5, 3).expect("valid sizes").basis().to_vec();
    c.bench_function("close_and_structure/almost-abelian-dim-6", |b| {
        b.iter(|| close_and_structure(black_box(&span)).expect("the example span is closed"))
    });
}

fn bench_classify(c: &mut Criterion) {
    let sl2 = sl2_example(3).expect("three variables");
    c.bench_function("classify_rank_one/sl2", |b| {
        b.iter(|| classify_rank_one(black_box(sl2.basis())))
    });
    let almost = almost_abelian_example(6, 3).expect("valid sizes");
    c.bench_function("classify_rank_one/almost-abelian-dim-7", |b| {
        b.iter(|| classify_rank_one(black_box(almost.basis())))
    });
}

fn bench_textio(c: &mut Criterion) {
    let d1 = deriv("(x^3*y + z^2 - 4*x)*d/dx + (y^4 - x*z)*d/dy + (x + y + z)^3*d/dz", 3);
    let text = print_derivation(&d1);
    c.bench_function("textio/print-parse-round-trip", |b| {
        b.iter(|| {
            let s = print_derivation(black_box(&d1));
            parse_derivation(&s, 3).expect("round trip parses")
        })
    });
    c.bench_function("textio/parse", |b| {
        b.iter(|| parse_derivation(black_box(&text), 3).expect("fixture parses"))
    });
}

criterion_group!(benches, bench_gcd, bench_bracket, bench_closure, bench_classify, bench_textio);
criterion_main!(benches);
