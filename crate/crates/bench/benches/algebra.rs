use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use schur_core::combinatorics::{enumerate_weight_matrices, MatrixConstraints};
use schur_core::oracle::{endomorphism_product, GreenConvolution};
use schur_core::{multiply_basis, WeightMatrix};

fn pairs(n: usize, r: u32) -> Vec<(WeightMatrix, WeightMatrix)> {
    let basis = enumerate_weight_matrices(n, r, &MatrixConstraints::none()).unwrap();
    let mut out = Vec::new();
    for a in &basis {
        for b in basis.iter().filter(|b| b.row_sums() == a.column_sums()) {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

fn products(c: &mut Criterion) {
    let composable = pairs(3, 3);
    c.bench_function("multiply_basis S(3,3) composable pairs", |b| {
        b.iter(|| {
            for (x, y) in &composable {
                black_box(multiply_basis(x, y).unwrap());
            }
        })
    });
    let green = GreenConvolution::new(3, 3).unwrap();
    c.bench_function("green convolution S(3,3) composable pairs", |b| {
        b.iter(|| {
            for (x, y) in &composable {
                black_box(green.product(x, y).unwrap());
            }
        })
    });
    let sample: Vec<_> = composable.iter().step_by(50).cloned().collect();
    c.bench_function("endomorphism composition S(3,3) sample", |b| {
        b.iter(|| {
            for (x, y) in &sample {
                black_box(endomorphism_product(x, y).unwrap());
            }
        })
    });
}

criterion_group!(benches, products);
criterion_main!(benches);
