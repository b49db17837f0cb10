use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use khlap::linalg::{jacobi_eigenvalues, tridiagonal_ql_eigenvalues, JACOBI_TOLERANCE};
use khlap::table::bundled_knot;
use khlap::{exact_rank, laplacian, parse_pd, KhovanovComplex, SpectralTable};

fn knot(name: &str) -> khlap::LinkDiagram {
    bundled_knot(name).expect("bundled knot")
}

fn parsing(c: &mut Criterion) {
    let text = knot("10_48").to_string();
    c.bench_function("parse_pd/10_48", |b| b.iter(|| parse_pd(black_box(&text)).unwrap()));
}

fn complexes(c: &mut Criterion) {
    let mut group = c.benchmark_group("complex");
    for name in ["3_1", "6_2", "8_12"] {
        let d = knot(name);
        group.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| {
            b.iter(|| KhovanovComplex::new(black_box(d)).unwrap())
        });
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral_table");
    group.sample_size(10);
    for name in ["3_1", "6_2", "8_12"] {
        let cx = KhovanovComplex::new(&knot(name)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &cx, |b, cx| {
            b.iter(|| SpectralTable::compute(black_box(cx)).unwrap())
        });
    }
    group.finish();
}

fn ranks(c: &mut Criterion) {
    let cx = KhovanovComplex::new(&knot("8_12")).unwrap();
    let largest = cx
        .differentials()
        .values()
        .max_by_key(|m| m.rows() * m.cols())
        .unwrap()
        .clone();
    let label = format!("8_12/{}x{}", largest.rows(), largest.cols());
    c.bench_function(&format!("exact_rank/{label}"), |b| b.iter(|| exact_rank(black_box(&largest))));
}

fn eigensolvers(c: &mut Criterion) {
    let cx = KhovanovComplex::new(&knot("7_4")).unwrap();
    // the widest cell of 7_4: 126 rows, above the Jacobi cutoff
    let (r, q) = cx
        .basis()
        .cells()
        .max_by_key(|(_, elems)| elems.len())
        .map(|(key, _)| key)
        .unwrap();
    let m = laplacian(&cx, r, q).to_symmetric();
    let mut group = c.benchmark_group(format!("eigenvalues/{}", m.dim()));
    group.sample_size(10);
    group.bench_function("jacobi", |b| b.iter(|| jacobi_eigenvalues(black_box(&m), JACOBI_TOLERANCE).unwrap()));
    group.bench_function("tridiagonal_ql", |b| b.iter(|| tridiagonal_ql_eigenvalues(black_box(&m)).unwrap()));
    group.finish();
}

criterion_group!(benches, parsing, complexes, tables, ranks, eigensolvers);
criterion_main!(benches);
