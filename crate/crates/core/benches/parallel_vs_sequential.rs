// SPDX-License-Identifier: Apache-2.0

//! Data-parallel helpers on the default pool against a one-thread pool.
//! Building with `--no-default-features` gives the plain sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use readonce::par;
use readonce::testgen::hypercube_set_all;
use readonce::verify::props::{property_suites, Budget, Suite};
use readonce::verify::{enumerate_readonce, is_checking_test};
use readonce::ReadOnceTree;

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", false), ("one-thread", true)]
}

fn run<R: Send>(single: bool, f: impl FnOnce() -> R + Send) -> R {
    if single {
        par::single_threaded(f)
    } else {
        f()
    }
}

fn catalog_check(c: &mut Criterion) {
    let cat = enumerate_readonce(4, 3, true).unwrap();
    let targets: Vec<_> = (0..20u64)
        .map(|s| {
            let f = ReadOnceTree::random(4, 3, s).truth_table();
            let m = readonce::testgen::hypercube_set(&f, 3).unwrap();
            (f, m)
        })
        .collect();
    let mut g = c.benchmark_group("checking test, n=4 l=3");
    for (name, single) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                run(single, || {
                    targets
                        .iter()
                        .all(|(f, m)| is_checking_test(f, m, &cat).unwrap().is_checking())
                })
            })
        });
    }
    g.finish();
}

fn catalog_build(c: &mut Criterion) {
    let mut g = c.benchmark_group("catalog build, n=4 l=3");
    g.sample_size(20);
    for (name, single) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run(single, || enumerate_readonce(4, 3, true).unwrap().len()))
        });
    }
    g.finish();
}

fn hypercubes(c: &mut Criterion) {
    let f = ReadOnceTree::random(12, 4, 7).truth_table();
    let mut g = c.benchmark_group("all relevance hypercubes, n=12 l=3");
    g.sample_size(20);
    for (name, single) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                run(single, || {
                    hypercube_set_all(black_box(&f), 3).unwrap().len()
                })
            })
        });
    }
    g.finish();
}

fn roundtrip(c: &mut Criterion) {
    let mut g = c.benchmark_group("factor round trip, 100 trees");
    g.sample_size(10);
    for (name, single) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                run(single, || {
                    property_suites(
                        black_box(1),
                        &Budget {
                            roundtrip: 100,
                            ..Budget::uniform(0)
                        },
                        Some(Suite::RoundTrip),
                    )
                    .passed()
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, catalog_check, catalog_build, hypercubes, roundtrip);
criterion_main!(benches);
