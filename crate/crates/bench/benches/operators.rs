use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use hilbert_core::circle::{
    circular_hilbert, moebius_act, semigroup_act, MoebiusElement, MoebiusWeight, RationalScale,
};
use hilbert_core::line::{dilate, hilbert_multiplier, hilbert_pv_quadrature, translate};
use hilbert_core::symmetry::{decompose_line_operator, hilbert_matrix, Basis};
use hilbert_core::{CircleSignal, Grid1D, LineSignal};

fn packet(n: usize) -> LineSignal {
    let grid = Grid1D::over(-40.0, 40.0, n).unwrap();
    LineSignal::from_fn(grid, |x| Complex64::new((-x * x / 2.0).exp() * (3.0 * x).cos(), 0.0)).unwrap()
}

fn line(c: &mut Criterion) {
    let mut g = c.benchmark_group("line");
    for n in [1024, 4096, 16384] {
        let f = packet(n);
        g.bench_with_input(BenchmarkId::new("hilbert_multiplier", n), &f, |b, f| {
            b.iter(|| hilbert_multiplier(f))
        });
        g.bench_with_input(BenchmarkId::new("dilate_2", n), &f, |b, f| {
            b.iter(|| dilate(f, 2.0).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("translate", n), &f, |b, f| {
            b.iter(|| translate(f, 0.37).unwrap())
        });
    }
    let f = packet(4096);
    g.bench_function("hilbert_pv_quadrature/4096", |b| b.iter(|| hilbert_pv_quadrature(&f)));
    g.finish();
}

fn circle(c: &mut Criterion) {
    let k = 128;
    let f = CircleSignal::from_fn(k, |i| Complex64::new(1.0 / (1.0 + (i * i) as f64), 0.0)).unwrap();
    let r = RationalScale::new(3, 2, 1.0).unwrap();
    let m = MoebiusElement::new(0.5, 0.3).unwrap();
    let samples = f.to_samples(512).unwrap();
    let mut g = c.benchmark_group("circle");
    g.bench_function("circular_hilbert/128", |b| b.iter(|| circular_hilbert(&f)));
    g.bench_function("semigroup_act/128", |b| b.iter(|| semigroup_act(&f, &r)));
    g.bench_function("moebius_act/512", |b| {
        b.iter(|| moebius_act(&samples, &m, MoebiusWeight::Jacobian).unwrap())
    });
    g.finish();
}

fn symmetry(c: &mut Criterion) {
    let grid = Grid1D::over(-40.0, 40.0, 256).unwrap();
    let h = hilbert_matrix(Basis::Line { grid });
    let mut g = c.benchmark_group("symmetry");
    g.sample_size(10);
    g.bench_function("decompose_line/256", |b| {
        b.iter(|| decompose_line_operator(&h).unwrap())
    });
    g.finish();
}

criterion_group!(benches, line, circle, symmetry);
criterion_main!(benches);
