use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qzeta_core::identity::verify_theorem;
use std::hint::black_box;

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_theorem");
    group.sample_size(10);
    for k in [1u32, 3, 6] {
        group.bench_with_input(BenchmarkId::new("order_200", k), &k, |be, &k| {
            be.iter(|| black_box(verify_theorem(k, 200).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, verify);
criterion_main!(benches);
