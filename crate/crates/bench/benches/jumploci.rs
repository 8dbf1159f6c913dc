use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use jumploci_core::alexander::alexander_matrix;
use jumploci_core::holonomy::{lie_ranks, QuadraticData};
use jumploci_core::laurent::{gcd, sample_characters};
use jumploci_core::resonance::{
    classify_malcev, isotropy_lower_bound, r1_is_full, IsotropySearch, ThreeForm,
};
use jumploci_core::seifert::{brieskorn_report, sweep_inputs};
use jumploci_core::{LaurentPoly, Presentation};

fn laurent(c: &mut Criterion) {
    let p = |s: &str| LaurentPoly::parse(s, 2).unwrap();
    let common = &p("t1 - 1") * &p("t1*t2 + t2^2 - 1");
    let a = &(&common * &common) * &p("t1 + 2*t2^-1");
    let b = &common * &p("3*t1^2 - t2 + 5");
    c.bench_function("gcd bivariate", |bench| {
        bench.iter(|| gcd(black_box(&a), black_box(&b)))
    });
}

fn alexander(c: &mut Criterion) {
    let surface = Presentation::surface(2);
    let figure8 = Presentation::parse("<a, b | a (b a^-1 b^-1 a) = (b a^-1 b^-1 a) b>").unwrap();
    c.bench_function("alexander polynomial figure-eight", |bench| {
        bench.iter(|| {
            alexander_matrix(black_box(&figure8))
                .unwrap()
                .alexander_polynomial()
        })
    });
    let a = alexander_matrix(&surface).unwrap();
    let chars = sample_characters(a.num_vars(), 50, 0);
    c.bench_function("twisted h1 surface genus 2, 50 characters", |bench| {
        bench.iter(|| {
            chars
                .iter()
                .map(|chi| a.twisted_h1_dim(chi).unwrap())
                .sum::<usize>()
        })
    });
}

fn resonance(c: &mut Criterion) {
    let eta = ThreeForm::product_form(4, 9);
    c.bench_function("symbolic R1 n = 9", |bench| {
        bench.iter(|| r1_is_full(black_box(&eta)))
    });
    c.bench_function("classify n = 9", |bench| {
        bench.iter(|| classify_malcev(black_box(&eta)))
    });
    let eta = ThreeForm::product_form(3, 7);
    let search = IsotropySearch::default();
    c.bench_function("isotropy search g = 3", |bench| {
        bench.iter(|| isotropy_lower_bound(black_box(&eta), &search))
    });
}

fn holonomy(c: &mut Criterion) {
    let q = QuadraticData::surface(2);
    c.bench_function("lie ranks surface genus 2 to degree 5", |bench| {
        bench.iter(|| lie_ranks(black_box(&q), 5).unwrap())
    });
}

fn seifert(c: &mut Criterion) {
    let inputs: Vec<_> = [3, 4].iter().flat_map(|&n| sweep_inputs(12, n)).collect();
    c.bench_function("brieskorn sweep 2..12", |bench| {
        bench.iter(|| {
            inputs
                .iter()
                .filter(|i| brieskorn_report(i).is_ok())
                .count()
        })
    });
}

criterion_group!(benches, laurent, alexander, resonance, holonomy, seifert);
criterion_main!(benches);
