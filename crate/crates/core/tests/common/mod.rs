//! Exhaustive oracles shared by the integration tests. Everything here
//! enumerates all vertex subsets, so keep graphs at 20 vertices or fewer.

#![allow(dead_code)]

use proptest::prelude::*;
use sensitivity_core::{Graph, GraphBuilder};

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

/// Largest induced degree inside the subset `s` (bit `v` = vertex `v`).
pub fn subset_degree(adj: &[u32], s: u32) -> u32 {
    (0..adj.len()).filter(|&v| s >> v & 1 == 1).map(|v| (adj[v] & s).count_ones()).max().unwrap_or(0)
}

/// Size of the largest set inducing maximum degree at most `k`.
pub fn brute_low_degree(g: &Graph, k: usize) -> usize {
    assert!(g.n() <= 20);
    let adj = masks(g);
    (0u32..1 << g.n())
        .filter(|&s| subset_degree(&adj, s) as usize <= k)
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn brute_alpha(g: &Graph) -> usize {
    brute_low_degree(g, 0)
}

/// Least `k` such that some `α + 1` vertices induce maximum degree `k`.
pub fn brute_sigma(g: &Graph) -> usize {
    let a = brute_alpha(g);
    (0..=g.max_degree()).find(|&k| brute_low_degree(g, k) > a).expect("n > α")
}

/// Least `k` such that at least `target` vertices induce maximum degree `k`.
pub fn brute_delta(g: &Graph, target: usize) -> usize {
    (0..=g.max_degree()).find(|&k| brute_low_degree(g, k) >= target).unwrap()
}

/// `ι_k` by enumerating all partitions; `None` when none is feasible.
pub fn brute_iota(g: &Graph, k: usize) -> Option<i64> {
    assert!(g.n() <= 20);
    let adj = masks(g);
    let full = (1u32 << g.n()) - 1;
    (0u32..1 << g.n())
        .filter(|&a| subset_degree(&adj, a) as usize <= k && subset_degree(&adj, full & !a) as usize <= k)
        .map(|a| 2 * a.count_ones() as i64 - g.n() as i64)
        .max()
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut b = GraphBuilder::new(n);
    let mut it = bits.iter();
    for u in 0..n {
        for v in u + 1..n {
            if *it.next().unwrap() {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// Random simple graphs on `lo..=hi` vertices.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.4), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}
