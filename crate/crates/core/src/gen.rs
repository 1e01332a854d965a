//! Seeded random instance generation. The same seed and configuration always
//! produce the same instance, bit for bit, so generated test corpora and CLI
//! reports are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypercore::{card, full_set, Dyperedge, MixedHypergraph, VertSet};

/// Shape of a random instance. Defaults: 4 vertices, 5 edges, 60% directed,
/// tail sets of size at most 3.
#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Vertex count.
    pub n: usize,
    /// Total number of hyperedges plus dyperedges.
    pub edges: usize,
    /// Probability that an edge is directed (a dyperedge).
    pub directed_share: f64,
    /// Largest tail set of a dyperedge; tails are uniform over the nonempty
    /// subsets of V minus the head up to this size.
    pub max_tail: usize,
    /// Largest hyperedge (at least 2).
    pub max_hyperedge: usize,
    /// Restrict dyperedges to plain arcs (single tail).
    pub arcs_only: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            n: 4,
            edges: 5,
            directed_share: 0.6,
            max_tail: 3,
            max_hyperedge: 4,
            arcs_only: false,
        }
    }
}

/// The deterministic stream used everywhere in this crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random mixed hypergraph from an explicit stream.
pub fn instance_with(r: &mut ChaCha8Rng, cfg: &GenConfig) -> Result<MixedHypergraph> {
    if cfg.n == 0 || cfg.n > 64 {
        return Err(Error::input("generator needs 1..=64 vertices".to_string()));
    }
    let n = cfg.n;
    let mut hyperedges: Vec<VertSet> = Vec::new();
    let mut dyperedges: Vec<Dyperedge> = Vec::new();
    for _ in 0..cfg.edges {
        let directed = n < 2 || r.gen_bool(cfg.directed_share);
        if directed && n >= 2 {
            let head = r.gen_range(0..n);
            let max_tail = if cfg.arcs_only { 1 } else { cfg.max_tail.clamp(1, n - 1) };
            let pool = full_set(n) & !(1u64 << head);
            let tails = random_subset(r, pool, 1, max_tail);
            dyperedges.push(Dyperedge { tails, head });
        } else if n >= 2 {
            let z = random_subset(r, full_set(n), 2, cfg.max_hyperedge.clamp(2, n));
            hyperedges.push(z);
        }
        // n = 1 admits no edge of either kind; the instance stays edgeless
    }
    MixedHypergraph::new(n, hyperedges, dyperedges)
}

/// A random mixed hypergraph from a fresh seed.
pub fn instance(seed: u64, cfg: &GenConfig) -> Result<MixedHypergraph> {
    instance_with(&mut rng(seed), cfg)
}

/// Uniform over the subsets of `pool` with cardinality in [lo, hi], by
/// rejection. `pool` must have at least `lo` elements.
pub fn random_subset(r: &mut ChaCha8Rng, pool: VertSet, lo: usize, hi: usize) -> VertSet {
    assert!(card(pool) >= lo && lo >= 1, "pool too small for the requested subset");
    loop {
        let s = r.gen::<u64>() & pool;
        let c = card(s);
        if c >= lo && c <= hi {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let cfg = GenConfig::default();
        let a = instance(42, &cfg).unwrap();
        let b = instance(42, &cfg).unwrap();
        assert_eq!(a.hyperedges(), b.hyperedges());
        assert_eq!(a.dyperedges(), b.dyperedges());
        let c = instance(43, &cfg).unwrap();
        let differs = a.hyperedges() != c.hyperedges() || a.dyperedges() != c.dyperedges();
        assert!(differs, "different seeds should almost surely differ");
    }

    #[test]
    fn shapes_respected() {
        let cfg = GenConfig { n: 4, edges: 30, max_tail: 2, max_hyperedge: 3, ..Default::default() };
        let g = instance(7, &cfg).unwrap();
        assert_eq!(g.edge_count(), 30);
        for d in g.dyperedges() {
            assert!(card(d.tails) <= 2 && d.tails != 0);
            assert_eq!(d.tails & (1 << d.head), 0);
        }
        for &z in g.hyperedges() {
            assert!((2..=3).contains(&card(z)));
        }
    }

    #[test]
    fn single_vertex_is_edgeless() {
        let cfg = GenConfig { n: 1, edges: 3, ..Default::default() };
        let g = instance(1, &cfg).unwrap();
        assert_eq!(g.edge_count(), 0);
    }
}
