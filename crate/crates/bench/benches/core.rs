use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use boxprod::balanced::{hom_formula_check, EnvelopingAlgebra};
use boxprod::exactla::kernel_basis;
use boxprod::Field;
use boxprod_bench::{group_algebra, hom_quadruple, kernel_fixture};

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel");
    for (name, field) in [("Q", Field::Rational), ("F7", Field::Prime(7))] {
        for n in [16, 48] {
            let m = kernel_fixture(field, n);
            group.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| b.iter(|| kernel_basis(field, black_box(m))));
        }
    }
    group.finish();
}

fn enveloping_center(c: &mut Criterion) {
    let mut group = c.benchmark_group("enveloping_center");
    group.sample_size(10);
    for (name, index) in [("Z2", 0), ("Z3", 1), ("S3", 2)] {
        let a = group_algebra(index);
        let e = EnvelopingAlgebra::new(a.clone(), a).expect("valid");
        group.bench_function(name, |b| b.iter(|| black_box(&e.algebra).center_basis().len()));
    }
    group.finish();
}

fn hom_formula(c: &mut Criterion) {
    let mut group = c.benchmark_group("hom_formula");
    for (name, index) in [("Z2", 0), ("S3", 2)] {
        let [x, x2, y, y2] = hom_quadruple(index, 5);
        group.bench_function(name, |b| b.iter(|| hom_formula_check(&x, &x2, &y, &y2).expect("same algebras")));
    }
    group.finish();
}

criterion_group!(benches, kernels, enveloping_center, hom_formula);
criterion_main!(benches);
