//! Parallel vs. sequential comparison for the heavy enumeration paths.
//!
//! Requires the `parallel` feature (the default), so both the rayon-backed
//! entry points and their `*_seq` twins are available side by side. Each
//! workload is sized to dominate thread-pool overhead: a 32768-element unit
//! group, a 4096-element symmetric-unit family, a 2048-element closure, and
//! a quadratic subgroup check.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use gabra_core::units::{
    closure, closure_seq, embedded_group, enumerate_normalized_units,
    enumerate_normalized_units_seq, is_subgroup, is_subgroup_seq, symmetric_units,
    symmetric_units_seq,
};
use gabra_core::{build_group, AlgebraContext};

const CAP: u64 = 1 << 24;

fn ctx(spec: &str) -> Arc<AlgebraContext> {
    AlgebraContext::new(build_group(spec).unwrap(), 2).unwrap()
}

/// Enumerate all 32768 normalized units of K(C₂⁴) over GF(2).
fn bench_enumerate(c: &mut Criterion) {
    let k = ctx("elem2e4");
    let mut group = c.benchmark_group("enumerate_v/elem2e4");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let v = enumerate_normalized_units(&k, CAP).unwrap();
            assert_eq!(v.len(), 32768);
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let v = enumerate_normalized_units_seq(&k, CAP).unwrap();
            assert_eq!(v.len(), 32768);
        })
    });
    group.finish();
}

/// Enumerate the 4096 symmetric normalized units of KD₁₆.
fn bench_symmetric(c: &mut Criterion) {
    let k = ctx("d16");
    let mut group = c.benchmark_group("symmetric_units/d16");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let s = symmetric_units(&k, CAP).unwrap();
            assert_eq!(s.len(), 4096);
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let s = symmetric_units_seq(&k, CAP).unwrap();
            assert_eq!(s.len(), 4096);
        })
    });
    group.finish();
}

/// Close ⟨G, S*⟩ inside V(K(Q₈×C₂)): 2048 members from 528 generators.
fn bench_closure(c: &mut Criterion) {
    let k = ctx("q8xc2");
    let mut gens = embedded_group(&k).sorted_elements();
    gens.extend(symmetric_units(&k, CAP).unwrap().sorted_elements());
    let mut group = c.benchmark_group("closure_g_sstar/q8xc2");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let h = closure(&k, &gens, CAP).unwrap();
            assert_eq!(h.len(), 2048);
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let h = closure_seq(&k, &gens, CAP).unwrap();
            assert_eq!(h.len(), 2048);
        })
    });
    group.finish();
}

/// Verify closure under multiplication for the full V(K(C₄×C₂)):
/// 128² = 16384 products.
fn bench_is_subgroup(c: &mut Criterion) {
    let k = ctx("c4xc2");
    let v = enumerate_normalized_units(&k, CAP).unwrap();
    let mut group = c.benchmark_group("is_subgroup_v/c4xc2");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| assert!(is_subgroup(&v))));
    group.bench_function("sequential", |b| b.iter(|| assert!(is_subgroup_seq(&v))));
    group.finish();
}

criterion_group!(
    benches,
    bench_enumerate,
    bench_symmetric,
    bench_closure,
    bench_is_subgroup
);
criterion_main!(benches);
