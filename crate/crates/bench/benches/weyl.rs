use cocyclelab_core::cohomology::{invariant_dims, kernel_table};
use cocyclelab_core::{longest_element, RootSystem, Signature};
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

fn bench_longest_element(c: &mut Criterion) {
    let mut group = c.benchmark_group("longest_element");
    for label in ["A8", "D8", "F4", "E8"] {
        let rs = RootSystem::parse(label).unwrap();
        group.bench_function(label, |b| b.iter(|| longest_element(black_box(&rs))));
    }
    group.finish();
}

fn bench_root_closure(c: &mut Criterion) {
    c.bench_function("build_root_system/E8", |b| {
        b.iter(|| RootSystem::parse(black_box("E8")).unwrap())
    });
}

fn bench_tables(c: &mut Criterion) {
    c.bench_function("kernel_table/s4t4", |b| {
        b.iter(|| {
            let inv = invariant_dims(black_box(Signature { s: 4, t: 4 }), 12);
            kernel_table(&inv, 12, None)
        })
    });
}

criterion_group!(benches, bench_longest_element, bench_root_closure, bench_tables);
criterion_main!(benches);
