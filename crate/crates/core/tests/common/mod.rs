//! Shared generators for the integration suites: seeded random instances of
//! a requested graph class and random parameter vectors.

// each integration target compiles this module separately and uses a subset
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use arbopack::gen::{instance_with, GenConfig};
use arbopack::hypercore::MixedHypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    /// Arcs only.
    Digraph,
    /// Dyperedges (multi-tail allowed), no hyperedges.
    Dypergraph,
    /// Hyperedges only.
    Hypergraph,
    /// Anything.
    Mixed,
}

pub fn rand_instance(
    r: &mut ChaCha8Rng,
    class: GraphClass,
    max_n: usize,
    max_edges: usize,
) -> MixedHypergraph {
    let n = r.gen_range(1..=max_n);
    let edges = if n == 1 { 0 } else { r.gen_range(0..=max_edges) };
    let (directed_share, arcs_only) = match class {
        GraphClass::Digraph => (1.0, true),
        GraphClass::Dypergraph => (1.0, false),
        GraphClass::Hypergraph => (0.0, false),
        GraphClass::Mixed => (0.6, false),
    };
    let cfg = GenConfig {
        n,
        edges,
        directed_share,
        max_tail: 3,
        max_hyperedge: 4,
        arcs_only,
    };
    instance_with(r, &cfg).expect("generator parameters are valid")
}

/// Per-vertex values uniform in [lo, hi].
pub fn rand_vec(r: &mut ChaCha8Rng, n: usize, lo: u32, hi: u32) -> Vec<u32> {
    (0..n).map(|_| r.gen_range(lo..=hi)).collect()
}

/// Root multiset as the JSON map used in problem files, with the given total.
pub fn rand_roots(r: &mut ChaCha8Rng, n: usize, total: u32) -> BTreeMap<String, u32> {
    let mut counts = vec![0u32; n];
    for _ in 0..total {
        counts[r.gen_range(0..n)] += 1;
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(v, &c)| (v.to_string(), c))
        .collect()
}

/// ℓ ≤ ℓ′ per member together with α, β satisfying the bordered totals chain
/// ℓ′(total) ≥ β ≥ α ≥ ℓ(total).
pub fn rand_bordered_bounds(
    r: &mut ChaCha8Rng,
    k: usize,
    n: usize,
) -> (Vec<u32>, Vec<u32>, u32, u32) {
    let ell: Vec<u32> = (0..k).map(|_| r.gen_range(0..=n as u32)).collect();
    let ellp: Vec<u32> = ell.iter().map(|&l| r.gen_range(l..=n as u32)).collect();
    let lo: u32 = ell.iter().sum();
    let hi: u32 = ellp.iter().sum();
    let alpha = r.gen_range(lo..=hi);
    let beta = r.gen_range(alpha..=hi);
    (ell, ellp, alpha, beta)
}

/// A nonempty subset of 0..n as a vertex list.
pub fn rand_set(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}
