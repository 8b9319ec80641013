use ballq_core::arith::{smith_normal_form, IntMatrix};
use ballq_core::fixtures;
use ballq_core::fpgroup::{parse_group_file, todd_coxeter, DEFAULT_MAX_COSETS};
use ballq_core::pipeline::run_bundled;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn coset_enumeration(c: &mut Criterion) {
    let f = parse_group_file(fixtures::get("f1536.grp").unwrap()).unwrap().presentation;
    c.bench_function("todd_coxeter f1536", |b| {
        b.iter(|| todd_coxeter(black_box(&f), &[], DEFAULT_MAX_COSETS).unwrap().n_cosets())
    });
}

fn pipelines(c: &mut Criterion) {
    for name in ["z4_abelian.pipeline", "z4_bielliptic.pipeline"] {
        c.bench_function(name, |b| b.iter(|| run_bundled(black_box(name)).unwrap()));
    }
}

fn smith(c: &mut Criterion) {
    // relation matrix of a 6 generator abelianization
    let rows: Vec<Vec<i64>> = (0..6)
        .map(|i| (0..6).map(|j| ((i * 7 + j * 13) % 11) as i64 - 5).collect())
        .collect();
    let m = IntMatrix::from_rows(&rows);
    c.bench_function("smith_normal_form 6x6", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

criterion_group!(benches, coset_enumeration, pipelines, smith);
criterion_main!(benches);
