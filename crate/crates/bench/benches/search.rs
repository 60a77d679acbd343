use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use vspart_bench::ambient;
use vspart_core::search::{enumerate_all, find_partition, Goal, SearchOptions};

fn search(c: &mut Criterion) {
    let amb = ambient(2, 5);
    let excluded = Goal::Type("1x2,4x3".parse().unwrap());
    let unpruned = SearchOptions { prune: false, ..SearchOptions::default() };
    c.bench_function("exhaust 1x2,4x3 in V_5(2)", |b| {
        b.iter(|| find_partition(black_box(&amb), &excluded, &unpruned).unwrap())
    });
    let amb6 = ambient(2, 6);
    let dims = Goal::Dims("2,3".parse().unwrap());
    c.bench_function("find {2,3} in V_6(2)", |b| {
        b.iter(|| find_partition(black_box(&amb6), &dims, &SearchOptions::default()).unwrap())
    });
    let amb4 = ambient(2, 4);
    c.bench_function("enumerate V_4(2)", |b| b.iter(|| enumerate_all(black_box(&amb4)).unwrap()));
}

criterion_group!(benches, search);
criterion_main!(benches);
