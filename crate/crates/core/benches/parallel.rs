use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fanomirror::catalog;
use fanomirror::frobenius::{associativity_check, build_series, structure_table};
use fanomirror::grassmannian::{build_rectangles_network, nobody_polytope, superpotential_chart};
use fanomirror::par;
use fanomirror::young::BoxContext;

const MODES: [(&str, bool); 2] = [("parallel", false), ("sequential", true)];

fn lattice_counts(c: &mut Criterion) {
    let net = build_rectangles_network(BoxContext::new(2, 5).unwrap());
    let poly = nobody_polytope(&net).unwrap();
    let mut group = c.benchmark_group("gr25_lattice_count_r2");
    group.sample_size(10);
    for (name, seq) in MODES {
        par::set_sequential(seq);
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| poly.lattice_point_count(black_box(2)).unwrap())
        });
    }
    par::set_sequential(false);
    group.finish();
}

fn polytope_vertices(c: &mut Criterion) {
    let net = build_rectangles_network(BoxContext::new(3, 6).unwrap());
    let mut group = c.benchmark_group("gr36_polytope");
    group.sample_size(10);
    for (name, seq) in MODES {
        par::set_sequential(seq);
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| nobody_polytope(black_box(&net)).unwrap()));
    }
    par::set_sequential(false);
    group.finish();
}

fn periods(c: &mut Criterion) {
    let w = superpotential_chart(&build_rectangles_network(BoxContext::new(2, 5).unwrap())).unwrap();
    let mut group = c.benchmark_group("gr25_periods_order10");
    group.sample_size(10);
    for (name, seq) in MODES {
        par::set_sequential(seq);
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| w.classical_periods(black_box(10))));
    }
    par::set_sequential(false);
    group.finish();
}

fn structure_constants(c: &mut Criterion) {
    let seq = catalog::lookup("p2").unwrap().graded_periods(24).unwrap();
    let series = build_series(&seq, 8).unwrap();
    let table = structure_table(&series, 8).unwrap();
    let mut group = c.benchmark_group("p2_table_p8");
    for (name, s) in MODES {
        par::set_sequential(s);
        group.bench_function(BenchmarkId::new("table", name), |b| {
            b.iter(|| structure_table(black_box(&series), 8).unwrap())
        });
        group.bench_function(BenchmarkId::new("associativity", name), |b| {
            b.iter(|| associativity_check(black_box(&table), 8, None))
        });
    }
    par::set_sequential(false);
    group.finish();
}

criterion_group!(benches, lattice_counts, polytope_vertices, periods, structure_constants);
criterion_main!(benches);
