use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use schur_core::homology::{homology_all, rank_mod_p};
use schur_core::{build_borel_resolution, build_weyl_resolution, smith_normal_form, Composition};

fn builds(c: &mut Criterion) {
    let lambda = Composition::new(vec![2, 1, 1]);
    c.bench_function("Weyl resolution (2,1,1)", |b| b.iter(|| black_box(build_weyl_resolution(&lambda).unwrap())));
    c.bench_function("Borel resolution (1,1,2)", |b| {
        let mu = Composition::new(vec![1, 1, 2]);
        b.iter(|| black_box(build_borel_resolution(&mu).unwrap()))
    });
}

fn linear_algebra(c: &mut Criterion) {
    let x = build_weyl_resolution(&Composition::new(vec![2, 1, 1])).unwrap();
    let d = (x.lo() + 1..=x.hi()).map(|k| x.differential(k)).max_by_key(|m| m.rows() * m.cols()).unwrap();
    c.bench_function("Smith form of the largest Weyl differential", |b| b.iter(|| black_box(smith_normal_form(&d))));
    c.bench_function("rank mod 3 of the same matrix", |b| b.iter(|| black_box(rank_mod_p(&d, 3).unwrap())));
    c.bench_function("homology of the Weyl complex", |b| b.iter(|| black_box(homology_all(&x).unwrap())));
}

criterion_group!(benches, builds, linear_algebra);
criterion_main!(benches);
