use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use skewpbw::units::intmat::{smith, IntMatrix};
use skewpbw::{catalog, classify_quasi_commutative, closed_form_coefficient, UnitGroup};
use skewpbw_bench::{dense, ring};

fn multiply(c: &mut Criterion) {
    let mut g = c.benchmark_group("multiply");
    for name in ["quantum-torus", "skew-3dim", "diffusion", "dqsq"] {
        let p = ring(name);
        let f = dense(&p, 3);
        g.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| {
            b.iter(|| p.multiply(black_box(f), black_box(f)))
        });
    }
    g.finish();
}

fn closed_form(c: &mut Criterion) {
    let p = ring("quantum-torus");
    let (t, l) = ([3, -2, 5], [-4, 6, 1]);
    c.bench_function("closed_form/quantum-torus", |b| {
        b.iter(|| closed_form_coefficient(&p, black_box(&t), black_box(&l)).unwrap())
    });
    c.bench_function("engine_monomial/quantum-torus", |b| {
        b.iter(|| p.multiply(&p.monomial(black_box(&t)), &p.monomial(black_box(&l))))
    });
}

fn classify(c: &mut Criterion) {
    let doc = catalog::load("multiplicative-weyl").unwrap();
    let images = doc.endomorphism("diag").unwrap().to_vec();
    let p = doc.presentation;
    c.bench_function("classify/multiplicative-weyl", |b| {
        b.iter(|| classify_quasi_commutative(&p, black_box(&images)).unwrap())
    });
}

fn units(c: &mut Criterion) {
    let p = ring("quantum-plane");
    let b = p.backend();
    let us: Vec<_> = [6, 10, 15, 21, 35, 77, 2, 3]
        .iter()
        .map(|&k| b.from_int(k))
        .collect();
    c.bench_function("independence/8-integers", |bch| {
        bch.iter(|| {
            UnitGroup::new(b, 1000)
                .independence(black_box(&us))
                .unwrap()
        })
    });
    let rows: Vec<Vec<i64>> = (0..12)
        .map(|i| {
            (0..12)
                .map(|j| ((i * 7 + j * 13) % 11) as i64 - 5)
                .collect()
        })
        .collect();
    let m = IntMatrix::from_i64(&rows);
    c.bench_function("smith/12x12", |bch| bch.iter(|| smith(black_box(&m))));
}

criterion_group!(benches, multiply, closed_form, classify, units);
criterion_main!(benches);
