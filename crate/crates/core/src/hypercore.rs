//! Mixed hypergraphs, entering/in-degree counts, subpartition algebra and the
//! set function p̂.
//!
//! Vertex sets are `u64` bitmasks over vertices `0..n` with `n <= 64`.
//! Hyperedges and dyperedges are kept in `Vec`s, so parallel copies are
//! distinct entries (multisets). Everything is immutable after construction.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};

/// A set of vertices as a bitmask; bit `v` set means vertex `v` is a member.
pub type VertSet = u64;

/// Iterate the vertices of a mask in ascending order.
pub fn bits(mut set: VertSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

/// Number of vertices in a mask.
pub fn card(set: VertSet) -> usize {
    set.count_ones() as usize
}

/// The full vertex set `{0, .., n-1}`.
pub fn full_set(n: usize) -> VertSet {
    debug_assert!(n <= 64);
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A directed hyperedge: a nonempty tail set and a head outside it.
/// An arc is the special case of a single tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyperedge {
    pub tails: VertSet,
    pub head: usize,
}

impl Dyperedge {
    pub fn is_arc(&self) -> bool {
        card(self.tails) == 1
    }

    /// The dyperedge enters `X` if its head is in `X` and some tail is not.
    pub fn enters(&self, x: VertSet, full: VertSet) -> bool {
        (x >> self.head) & 1 == 1 && self.tails & (full & !x) != 0
    }
}

/// A hyperedge `Z` enters `X` if it meets both `X` and its complement.
pub fn hyperedge_enters(z: VertSet, x: VertSet, full: VertSet) -> bool {
    z & x != 0 && z & (full & !x) != 0
}

/// Reference to one edge of a mixed hypergraph, multiset position included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeRef {
    Hyper(usize),
    Dyper(usize),
}

/// A mixed hypergraph: `n` vertices plus multisets of hyperedges and
/// dyperedges. A digraph is the special case of single-tail dyperedges only,
/// a hypergraph the case of no dyperedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedHypergraph {
    n: usize,
    hyperedges: Vec<VertSet>,
    dyperedges: Vec<Dyperedge>,
}

impl MixedHypergraph {
    pub fn new(n: usize, hyperedges: Vec<VertSet>, dyperedges: Vec<Dyperedge>) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::input(format!("vertex count {n} out of range 1..=64")));
        }
        let full = full_set(n);
        for (i, &z) in hyperedges.iter().enumerate() {
            if z & !full != 0 {
                return Err(Error::input(format!("hyperedge {i} has a vertex out of range")));
            }
            if card(z) < 2 {
                return Err(Error::input(format!("hyperedge {i} has fewer than 2 vertices")));
            }
        }
        for (i, d) in dyperedges.iter().enumerate() {
            if d.head >= n || d.tails & !full != 0 {
                return Err(Error::input(format!("dyperedge {i} has a vertex out of range")));
            }
            if d.tails == 0 {
                return Err(Error::input(format!("dyperedge {i} has an empty tail set")));
            }
            if (d.tails >> d.head) & 1 == 1 {
                return Err(Error::input(format!("dyperedge {i}: head inside its tail set")));
            }
        }
        Ok(MixedHypergraph { n, hyperedges, dyperedges })
    }

    /// Digraph constructor from an arc list.
    pub fn digraph(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let dyperedges = arcs
            .iter()
            .map(|&(u, v)| Dyperedge { tails: 1u64 << u, head: v })
            .collect();
        MixedHypergraph::new(n, Vec::new(), dyperedges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> VertSet {
        full_set(self.n)
    }

    pub fn hyperedges(&self) -> &[VertSet] {
        &self.hyperedges
    }

    pub fn dyperedges(&self) -> &[Dyperedge] {
        &self.dyperedges
    }

    pub fn edge_count(&self) -> usize {
        self.hyperedges.len() + self.dyperedges.len()
    }

    /// All edges in a single index space: hyperedges first, then dyperedges.
    pub fn edge_refs(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.hyperedges.len())
            .map(EdgeRef::Hyper)
            .chain((0..self.dyperedges.len()).map(EdgeRef::Dyper))
    }

    /// Vertices touched by an edge (tails plus head for dyperedges).
    pub fn edge_vertices(&self, e: EdgeRef) -> VertSet {
        match e {
            EdgeRef::Hyper(i) => self.hyperedges[i],
            EdgeRef::Dyper(i) => self.dyperedges[i].tails | (1u64 << self.dyperedges[i].head),
        }
    }

    /// Whether an edge enters a vertex set.
    pub fn edge_enters(&self, e: EdgeRef, x: VertSet) -> Result<bool> {
        self.check_range(x)?;
        Ok(match e {
            EdgeRef::Hyper(i) => hyperedge_enters(self.hyperedges[i], x, self.full()),
            EdgeRef::Dyper(i) => self.dyperedges[i].enters(x, self.full()),
        })
    }

    fn check_range(&self, x: VertSet) -> Result<()> {
        if x & !self.full() != 0 {
            return Err(Error::input("vertex set out of range".to_string()));
        }
        Ok(())
    }

    /// In-degree of `X`: dyperedges entering `X`, with multiplicity.
    pub fn in_degree(&self, x: VertSet) -> Result<usize> {
        self.check_range(x)?;
        let full = self.full();
        Ok(self.dyperedges.iter().filter(|d| d.enters(x, full)).count())
    }

    /// `e_{E∪A}(P)`: hyperedges plus dyperedges entering at least one block of
    /// the subpartition, each counted once.
    pub fn border_count(&self, blocks: &[VertSet]) -> usize {
        let full = self.full();
        let mut count = 0;
        for &z in &self.hyperedges {
            if blocks.iter().any(|&b| hyperedge_enters(z, b, full)) {
                count += 1;
            }
        }
        for d in &self.dyperedges {
            if blocks.iter().any(|&b| d.enters(b, full)) {
                count += 1;
            }
        }
        count
    }

    /// Same, restricted to dyperedges only (`e_A`).
    pub fn border_count_directed(&self, blocks: &[VertSet]) -> usize {
        let full = self.full();
        self.dyperedges
            .iter()
            .filter(|d| blocks.iter().any(|&b| d.enters(b, full)))
            .count()
    }

    /// `p̂(Z) = max { h|P| - e(P) : P subpartition of Z }`. Always >= 0
    /// because the empty subpartition contributes 0.
    pub fn p_hat(&self, h: u32, z: VertSet, caps: &Caps) -> Result<i64> {
        self.check_range(z)?;
        let mut best = 0i64;
        for_each_subpartition_capped(z, caps, &mut |blocks| {
            let val = h as i64 * blocks.len() as i64 - self.border_count(blocks) as i64;
            if val > best {
                best = val;
            }
        })?;
        Ok(best)
    }

    /// A copy with extra arcs appended at the end of the dyperedge list.
    pub fn with_added_arcs(&self, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = self.dyperedges.clone();
        for &(u, v) in arcs {
            if u == v {
                return Err(Error::input("added arc with equal endpoints".to_string()));
            }
            d.push(Dyperedge { tails: 1u64 << u, head: v });
        }
        MixedHypergraph::new(self.n, self.hyperedges.clone(), d)
    }

    /// A copy with extra (graph) edges appended as size-2 hyperedges.
    pub fn with_added_edges(&self, edges: &[(usize, usize)]) -> Result<Self> {
        let mut h = self.hyperedges.clone();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::input("added edge with equal endpoints".to_string()));
            }
            h.push((1u64 << u) | (1u64 << v));
        }
        MixedHypergraph::new(self.n, h, self.dyperedges.clone())
    }
}

/// A family of pairwise-disjoint nonempty vertex sets. The empty family is a
/// valid subpartition; a subpartition whose union is the whole vertex set is
/// a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subpartition {
    blocks: Vec<VertSet>,
}

impl Subpartition {
    pub fn new(blocks: Vec<VertSet>) -> Result<Self> {
        let mut seen: VertSet = 0;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::input("subpartition block is empty".to_string()));
            }
            if seen & b != 0 {
                return Err(Error::input("subpartition blocks are not disjoint".to_string()));
            }
            seen |= b;
        }
        Ok(Subpartition { blocks })
    }

    pub fn empty() -> Self {
        Subpartition { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[VertSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Union of all blocks.
    pub fn support(&self) -> VertSet {
        self.blocks.iter().fold(0, |a, &b| a | b)
    }
}

/// Meet and join of two subpartitions produced by uncrossing.
///
/// `|meet| + |join| = |P1| + |P2|`, the meet partitions `∪P1 ∩ ∪P2` and the
/// join partitions `∪P1 ∪ ∪P2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncrossResult {
    pub meet: Subpartition,
    pub join: Subpartition,
}

fn properly_intersecting(x: VertSet, y: VertSet) -> bool {
    x & y != 0 && x & !y != 0 && y & !x != 0
}

/// Uncross two subpartitions: repeatedly replace the lowest-indexed properly
/// intersecting pair by intersection and union until the family is laminar,
/// then split into minimal sets (meet) and maximal sets (join).
pub fn uncross(p1: &Subpartition, p2: &Subpartition) -> UncrossResult {
    let mut fam: Vec<VertSet> = p1.blocks.iter().chain(p2.blocks.iter()).copied().collect();
    'outer: loop {
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                if properly_intersecting(fam[i], fam[j]) {
                    let inter = fam[i] & fam[j];
                    let uni = fam[i] | fam[j];
                    fam[i] = inter;
                    fam[j] = uni;
                    continue 'outer;
                }
            }
        }
        break;
    }
    // The laminar family covers each element of (∪P1)∩(∪P2) twice and the
    // rest once, so containment chains have depth at most two. A set strictly
    // below another goes to the meet, a duplicated set contributes one copy
    // to each side, everything else goes to the join.
    let mut meet = Vec::new();
    let mut join = Vec::new();
    let mut consumed = vec![false; fam.len()];
    for i in 0..fam.len() {
        if consumed[i] {
            continue;
        }
        let dup = (i + 1..fam.len()).find(|&j| !consumed[j] && fam[j] == fam[i]);
        if let Some(j) = dup {
            consumed[j] = true;
            meet.push(fam[i]);
            join.push(fam[i]);
        } else if fam.iter().any(|&other| other != fam[i] && other & fam[i] == fam[i]) {
            meet.push(fam[i]);
        } else {
            join.push(fam[i]);
        }
    }
    UncrossResult {
        meet: Subpartition { blocks: meet },
        join: Subpartition { blocks: join },
    }
}

/// Visit every subpartition of `z` exactly once, the empty family included.
/// The visit order is deterministic; there are Bell(|z|+1) subpartitions.
pub fn for_each_subpartition(z: VertSet, f: &mut impl FnMut(&[VertSet])) {
    let elems: Vec<usize> = bits(z).collect();
    let mut blocks: Vec<VertSet> = Vec::new();
    rec_subpartition(&elems, 0, &mut blocks, false, f);
}

fn rec_subpartition(
    elems: &[usize],
    idx: usize,
    blocks: &mut Vec<VertSet>,
    partition_only: bool,
    f: &mut impl FnMut(&[VertSet]),
) {
    if idx == elems.len() {
        f(blocks);
        return;
    }
    let bit = 1u64 << elems[idx];
    // skip the element entirely (subpartitions need not cover z)
    if !partition_only {
        rec_subpartition(elems, idx + 1, blocks, partition_only, f);
    }
    // add to an existing block
    for i in 0..blocks.len() {
        blocks[i] |= bit;
        rec_subpartition(elems, idx + 1, blocks, partition_only, f);
        blocks[i] &= !bit;
    }
    // open a new block
    blocks.push(bit);
    rec_subpartition(elems, idx + 1, blocks, partition_only, f);
    blocks.pop();
}

/// Visit every partition of `z` (cover required). For `z = 0` the only
/// partition is the empty family.
pub fn for_each_partition(z: VertSet, f: &mut impl FnMut(&[VertSet])) {
    let elems: Vec<usize> = bits(z).collect();
    let mut blocks: Vec<VertSet> = Vec::new();
    rec_subpartition(&elems, 0, &mut blocks, true, f);
}

/// Capped variant used by everything evaluating a "for every subpartition"
/// quantifier.
pub fn for_each_subpartition_capped(
    z: VertSet,
    caps: &Caps,
    f: &mut impl FnMut(&[VertSet]),
) -> Result<()> {
    if card(z) > caps.subpartition_ground {
        return Err(Error::cap(format!(
            "subpartition enumeration over {} elements exceeds cap {}",
            card(z),
            caps.subpartition_ground
        )));
    }
    for_each_subpartition(z, f);
    Ok(())
}

/// Collect all subpartitions of `z` as `Subpartition` values.
pub fn enumerate_subpartitions(z: VertSet, caps: &Caps) -> Result<Vec<Subpartition>> {
    let mut out = Vec::new();
    for_each_subpartition_capped(z, caps, &mut |blocks| {
        out.push(Subpartition { blocks: blocks.to_vec() })
    })?;
    Ok(out)
}

/// JSON form of an instance:
/// `{"n":int,"hyperedges":[[v,...],...],"dyperedges":[{"tails":[...],"head":v},...],"arcs":[[u,v],...]}`
/// where `arcs` is sugar for single-tail dyperedges.
#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceJson {
    pub n: usize,
    #[serde(default)]
    pub hyperedges: Vec<Vec<usize>>,
    #[serde(default)]
    pub dyperedges: Vec<DyperedgeJson>,
    #[serde(default)]
    pub arcs: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DyperedgeJson {
    pub tails: Vec<usize>,
    pub head: usize,
}

impl InstanceJson {
    pub fn to_graph(&self) -> Result<MixedHypergraph> {
        let to_mask = |vs: &[usize]| -> Result<VertSet> {
            let mut m = 0u64;
            for &v in vs {
                if v >= 64 {
                    return Err(Error::input(format!("vertex {v} out of range")));
                }
                m |= 1u64 << v;
            }
            Ok(m)
        };
        let hyperedges = self
            .hyperedges
            .iter()
            .map(|h| to_mask(h))
            .collect::<Result<Vec<_>>>()?;
        let mut dyperedges = self
            .dyperedges
            .iter()
            .map(|d| Ok(Dyperedge { tails: to_mask(&d.tails)?, head: d.head }))
            .collect::<Result<Vec<_>>>()?;
        for &(u, v) in &self.arcs {
            if u >= 64 {
                return Err(Error::input(format!("vertex {u} out of range")));
            }
            dyperedges.push(Dyperedge { tails: 1u64 << u, head: v });
        }
        MixedHypergraph::new(self.n, hyperedges, dyperedges)
    }

    pub fn from_graph(g: &MixedHypergraph) -> Self {
        InstanceJson {
            n: g.n(),
            hyperedges: g.hyperedges().iter().map(|&z| bits(z).collect()).collect(),
            dyperedges: g
                .dyperedges()
                .iter()
                .map(|d| DyperedgeJson { tails: bits(d.tails).collect(), head: d.head })
                .collect(),
            arcs: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MixedHypergraph {
        MixedHypergraph::digraph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn enters_examples() {
        let g = MixedHypergraph::new(
            3,
            vec![0b011],
            vec![Dyperedge { tails: 0b011, head: 2 }],
        )
        .unwrap();
        // dyperedge ({0,1} -> 2)
        assert!(g.edge_enters(EdgeRef::Dyper(0), 0b100).unwrap());
        assert!(!g.edge_enters(EdgeRef::Dyper(0), 0b011).unwrap());
        // hyperedge {0,1} with X = {0,1}: complement side empty
        assert!(!g.edge_enters(EdgeRef::Hyper(0), 0b011).unwrap());
        assert!(g.edge_enters(EdgeRef::Hyper(0), 0b001).unwrap());
        assert!(g.edge_enters(EdgeRef::Hyper(0), 0b110).unwrap());
    }

    #[test]
    fn enters_range_check() {
        let g = triangle();
        assert!(g.edge_enters(EdgeRef::Dyper(0), 1 << 5).is_err());
        assert!(g.in_degree(1 << 10).is_err());
    }

    #[test]
    fn in_degree_triangle() {
        let g = triangle();
        assert_eq!(g.in_degree(0b001).unwrap(), 1);
        assert_eq!(g.in_degree(0b011).unwrap(), 1);
        assert_eq!(g.in_degree(0b111).unwrap(), 0);
    }

    #[test]
    fn border_count_examples() {
        let g = MixedHypergraph::new(3, vec![0b111], vec![]).unwrap();
        assert_eq!(g.border_count(&[0b001, 0b010]), 1);
        let tri = triangle();
        assert_eq!(tri.border_count(&[0b001, 0b010, 0b100]), 3);
        assert_eq!(tri.border_count(&[]), 0);
    }

    #[test]
    fn uncross_examples() {
        let p1 = Subpartition::new(vec![0b011]).unwrap();
        let p2 = Subpartition::new(vec![0b110]).unwrap();
        let r = uncross(&p1, &p2);
        assert_eq!(r.meet.blocks(), &[0b010]);
        assert_eq!(r.join.blocks(), &[0b111]);

        let p1 = Subpartition::new(vec![0b001]).unwrap();
        let p2 = Subpartition::new(vec![0b010]).unwrap();
        let r = uncross(&p1, &p2);
        assert!(r.meet.is_empty());
        assert_eq!(r.join.len(), 2);

        let p = Subpartition::new(vec![0b001]).unwrap();
        let r = uncross(&p, &p);
        assert_eq!(r.meet.blocks(), &[0b001]);
        assert_eq!(r.join.blocks(), &[0b001]);
    }

    #[test]
    fn subpartition_counts_are_bell_numbers() {
        let caps = Caps::default();
        // Bell(m+1) subpartitions of an m-set: 1, 2, 5, 15, 52
        for (m, expect) in [(0u32, 1usize), (1, 2), (2, 5), (3, 15), (4, 52)] {
            let z = full_set(m as usize);
            assert_eq!(enumerate_subpartitions(z, &caps).unwrap().len(), expect);
        }
    }

    #[test]
    fn subpartition_cap_is_enforced() {
        let caps = Caps { subpartition_ground: 3, ..Caps::default() };
        assert!(enumerate_subpartitions(full_set(4), &caps).is_err());
    }

    #[test]
    fn p_hat_examples() {
        let caps = Caps::default();
        let empty = MixedHypergraph::new(2, vec![], vec![]).unwrap();
        assert_eq!(empty.p_hat(1, 0b11, &caps).unwrap(), 2);
        assert_eq!(empty.p_hat(1, 0, &caps).unwrap(), 0);
        let g = MixedHypergraph::new(3, vec![0b111], vec![]).unwrap();
        assert_eq!(g.p_hat(1, 0b011, &caps).unwrap(), 1);
    }

    #[test]
    fn instance_json_round_trip() {
        let json = r#"{"n":3,"hyperedges":[[0,1,2]],"dyperedges":[{"tails":[0,1],"head":2}],"arcs":[[0,1]]}"#;
        let parsed: InstanceJson = serde_json::from_str(json).unwrap();
        let g = parsed.to_graph().unwrap();
        assert_eq!(g.hyperedges().len(), 1);
        assert_eq!(g.dyperedges().len(), 2);
        assert!(g.dyperedges()[1].is_arc());
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(MixedHypergraph::new(2, vec![0b01], vec![]).is_err());
        assert!(MixedHypergraph::new(2, vec![], vec![Dyperedge { tails: 0b10, head: 1 }]).is_err());
        assert!(MixedHypergraph::new(2, vec![], vec![Dyperedge { tails: 0, head: 1 }]).is_err());
        assert!(Subpartition::new(vec![0b011, 0b010]).is_err());
        assert!(Subpartition::new(vec![0]).is_err());
    }
}
