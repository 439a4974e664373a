//! Parallel vs sequential executor comparison on the three hot workloads:
//! exhaustive subset scans (Alon–Chung slack), character-sum batches
//! (λ(S) sampling), and independent-subtree batches (encode round trips).
//!
//! With the default `parallel` feature the `par` group runs on rayon and
//! the `seq` group on the sequential reference path; built with
//! `--no-default-features` both groups are sequential, which is the
//! fallback being validated.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use sumfree_core::bitset::BitSet;
use sumfree_core::extremal::enumerate_sf0;
use sumfree_core::group::GroupSpec;
use sumfree_core::hypergraph::{DenseGraph, SchurHypergraph};
use sumfree_core::par;
use sumfree_core::spectral::dense_symmetric_spectrum;

/// min Alon–Chung slack over all subsets of a circulant, through a chosen
/// executor.
fn min_slack<E>(graph: &DenseGraph, lambda_min: f64, execute: E) -> f64
where
    E: Fn(std::ops::Range<u64>, f64, &(dyn Fn(u64) -> f64 + Sync + Send)) -> f64,
{
    let n = graph.vertex_count();
    let d = graph.regular_degree.unwrap() as f64;
    let nf = n as f64;
    let rows: Vec<u64> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u64, |acc, u| acc | 1 << u))
        .collect();
    let map = move |mask: u64| {
        let size = mask.count_ones() as f64;
        let mut twice_edges = 0u32;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            twice_edges += (rows[v] & mask).count_ones();
        }
        twice_edges as f64 - (d / nf) * size * size - (lambda_min / nf) * size * (nf - size)
    };
    execute(0..1u64 << n, f64::INFINITY, &map)
}

fn bench_subset_scan(c: &mut Criterion) {
    let mut graph = DenseGraph::circulant(18, &[1, 3, 5]);
    graph.verify_regular().unwrap();
    let lambda_min = dense_symmetric_spectrum(&graph).unwrap().bottom();
    let mut group = c.benchmark_group("alon_chung_subset_scan_n18");
    group.sample_size(10);
    group.bench_function("par", |b| {
        b.iter(|| {
            min_slack(black_box(&graph), lambda_min, |r, id, f| {
                par::map_reduce(r, id, f, f64::min)
            })
        })
    });
    group.bench_function("seq", |b| {
        b.iter(|| {
            min_slack(black_box(&graph), lambda_min, |r, id, f| {
                par::map_reduce_seq(r, id, f, f64::min)
            })
        })
    });
    group.finish();
}

fn bench_lambda_batch(c: &mut Criterion) {
    let g = GroupSpec::parse("Z96").unwrap();
    let n = g.order_usize();
    let mut group = c.benchmark_group("lambda_s_batch_z96");
    group.sample_size(10);
    let trial = |t: u64| -> f64 {
        // deterministic pseudo-random 8-element subsets
        let mut s = BitSet::new(n);
        let mut x = par::derive_seed(42, t);
        while s.len() < 8 {
            x = par::derive_seed(x, 1);
            let v = 1 + (x % (n as u64 - 1)) as usize;
            s.insert(v);
        }
        sumfree_core::spectral::lambda_s(&g, &s).unwrap()
    };
    group.bench_function("par", |b| {
        b.iter(|| par::map_reduce(0..512, f64::INFINITY, trial, f64::min))
    });
    group.bench_function("seq", |b| {
        b.iter(|| par::map_reduce_seq(0..512, f64::INFINITY, trial, f64::min))
    });
    group.finish();
}

fn bench_encode_batch(c: &mut Criterion) {
    let g = GroupSpec::parse("Z30").unwrap();
    let h = SchurHypergraph::new(g.clone());
    let family = enumerate_sf0(&g).unwrap();
    let b0 = family.sets[0].clone();
    let params = sumfree_core::encoding::EncodingParams {
        stop_fraction: 0.5,
        alpha: 0.5,
        beta: 0.1,
        gamma: 0.05,
        capital_c: 2.0,
        d: 4,
    };
    let run = |t: u64| -> usize {
        // rotate which members of the extremal set are dropped
        let members: Vec<usize> = b0.iter().collect();
        let mut i = BitSet::new(30);
        for (k, &v) in members.iter().enumerate() {
            if (k as u64 + t) % 3 != 0 {
                i.insert(v);
            }
        }
        let res = sumfree_core::encoding::main_encode(&h, &family, &i, &params).unwrap();
        let a = sumfree_core::encoding::main_decode(&h, &family, &res.selected, &params).unwrap();
        a.len()
    };
    let mut group = c.benchmark_group("main_encode_roundtrips_z30");
    group.sample_size(10);
    group.bench_function("par", |b| {
        b.iter(|| par::map_reduce(0..256, 0usize, run, usize::max))
    });
    group.bench_function("seq", |b| {
        b.iter(|| par::map_reduce_seq(0..256, 0usize, run, usize::max))
    });
    group.finish();
}

criterion_group!(benches, bench_subset_scan, bench_lambda_batch, bench_encode_batch);
criterion_main!(benches);
