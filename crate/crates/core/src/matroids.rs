//! Root multisets and matroid rank oracles.
//!
//! The ground set of a matroid here is always the element list of a
//! [`RootMultiset`]: pairs (vertex, copy-index) flattened in ascending
//! (vertex, copy) order. General matroids are supplied as explicit rank
//! tables; no callbacks cross the interface boundary.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypercore::{bits, VertSet};

/// A multiset of vertices: per-vertex multiplicities. Element `j` of the
/// flattened ground set maps to the vertex whose prefix-sum interval
/// contains `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootMultiset {
    counts: Vec<u32>,
}

impl RootMultiset {
    pub fn new(counts: Vec<u32>) -> Self {
        RootMultiset { counts }
    }

    /// `k × V`: every vertex with multiplicity `k`.
    pub fn uniform(n: usize, k: u32) -> Self {
        RootMultiset { counts: vec![k; n] }
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, v: usize) -> u32 {
        self.counts[v]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Total size |S|.
    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Vertex of ground element `j`.
    pub fn vertex_of(&self, mut j: u32) -> usize {
        for (v, &c) in self.counts.iter().enumerate() {
            if j < c {
                return v;
            }
            j -= c;
        }
        panic!("element index out of range");
    }

    /// Ground-element mask of the restriction `S_X`.
    pub fn restriction_mask(&self, x: VertSet) -> u64 {
        let mut mask = 0u64;
        let mut offset = 0u32;
        for (v, &c) in self.counts.iter().enumerate() {
            if (x >> v) & 1 == 1 && c > 0 {
                mask |= low_mask(c) << offset;
            }
            offset += c;
        }
        mask
    }

    /// `|S_X|`.
    pub fn restricted_size(&self, x: VertSet) -> u32 {
        bits(x).map(|v| self.counts[v]).sum()
    }

    /// Per-vertex counts of a ground-element mask.
    pub fn profile_of_mask(&self, mask: u64) -> Vec<u32> {
        let mut prof = vec![0u32; self.counts.len()];
        let mut offset = 0u32;
        for (v, &c) in self.counts.iter().enumerate() {
            let slice = (mask >> offset) & low_mask(c);
            prof[v] = slice.count_ones();
            offset += c;
        }
        prof
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Free,
    Uniform(u32),
    Table(Vec<u32>),
}

/// A matroid over a ground set of `ground` elements, queried by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidOracle {
    ground: usize,
    kind: Kind,
}

impl MatroidOracle {
    pub fn free(ground: usize) -> Self {
        MatroidOracle { ground, kind: Kind::Free }
    }

    pub fn uniform(ground: usize, rank: u32) -> Self {
        MatroidOracle { ground, kind: Kind::Uniform(rank) }
    }

    /// Explicit rank table indexed by subset bitmask. The three rank axioms
    /// (subcardinal, non-decreasing, submodular) are validated exhaustively.
    pub fn from_table(ground: usize, table: Vec<u32>, caps: &Caps) -> Result<Self> {
        if ground > caps.matroid_ground {
            return Err(Error::cap(format!(
                "matroid ground {ground} exceeds cap {}",
                caps.matroid_ground
            )));
        }
        if table.len() != 1usize << ground {
            return Err(Error::input(format!(
                "rank table has {} entries, expected {}",
                table.len(),
                1usize << ground
            )));
        }
        if table[0] != 0 {
            return Err(Error::input("rank of the empty set must be 0".to_string()));
        }
        for x in 0..table.len() {
            if table[x] > (x as u64).count_ones() {
                return Err(Error::input(format!("rank table not subcardinal at {x:#b}")));
            }
            for e in 0..ground {
                if x >> e & 1 == 1 {
                    continue;
                }
                let xe = x | (1 << e);
                if table[xe] < table[x] {
                    return Err(Error::input(format!("rank table decreasing at {x:#b}+{e}")));
                }
                // local submodularity: r(X+e)+r(X+f) >= r(X+e+f)+r(X)
                for f in e + 1..ground {
                    if x >> f & 1 == 1 {
                        continue;
                    }
                    let xf = x | (1 << f);
                    let xef = xe | (1 << f);
                    if table[xe] + table[xf] < table[xef] + table[x] {
                        return Err(Error::input(format!(
                            "rank table not submodular at {x:#b} with elements {e},{f}"
                        )));
                    }
                }
            }
        }
        Ok(MatroidOracle { ground, kind: Kind::Table(table) })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    /// Rank of a subset of the ground set, given as an element bitmask.
    pub fn rank(&self, x: u64) -> u32 {
        debug_assert_eq!(x & !ground_mask(self.ground), 0);
        match &self.kind {
            Kind::Free => x.count_ones(),
            Kind::Uniform(k) => x.count_ones().min(*k),
            Kind::Table(t) => t[x as usize],
        }
    }

    pub fn is_independent(&self, x: u64) -> bool {
        self.rank(x) == x.count_ones()
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> u32 {
        self.rank(ground_mask(self.ground))
    }

    /// `b_M(X) = r_M(S_X)` as a set function on the vertex set.
    pub fn rank_restricted(&self, roots: &RootMultiset, x: VertSet) -> u32 {
        self.rank(roots.restriction_mask(x))
    }

    /// An independent set with exactly `m[v]` elements at each vertex, or
    /// `None` if no such set exists. Free and uniform matroids are handled
    /// directly; tables by exhaustive search returning the lexicographically
    /// least witness (as a sorted element list).
    pub fn independent_with_profile(
        &self,
        roots: &RootMultiset,
        m: &[u32],
        caps: &Caps,
    ) -> Result<Option<u64>> {
        assert_eq!(m.len(), roots.n());
        if m.iter().zip(roots.counts()).any(|(&mv, &cv)| mv > cv) {
            return Ok(None);
        }
        let total: u32 = m.iter().sum();
        match &self.kind {
            Kind::Free => Ok(Some(first_copies_mask(roots, m))),
            Kind::Uniform(k) => {
                if total > *k {
                    Ok(None)
                } else {
                    Ok(Some(first_copies_mask(roots, m)))
                }
            }
            Kind::Table(_) => {
                if self.ground > caps.matroid_ground {
                    return Err(Error::cap(format!(
                        "profile search over ground {} exceeds cap {}",
                        self.ground, caps.matroid_ground
                    )));
                }
                let mut best: Option<(Vec<u32>, u64)> = None;
                for mask in 0..(1u64 << self.ground) {
                    if mask.count_ones() != total {
                        continue;
                    }
                    if roots.profile_of_mask(mask) != m {
                        continue;
                    }
                    if !self.is_independent(mask) {
                        continue;
                    }
                    let elems: Vec<u32> = (0..self.ground as u32)
                        .filter(|&e| mask >> e & 1 == 1)
                        .collect();
                    if best.as_ref().map_or(true, |(b, _)| elems < *b) {
                        best = Some((elems, mask));
                    }
                }
                Ok(best.map(|(_, m)| m))
            }
        }
    }
}

fn ground_mask(ground: usize) -> u64 {
    low_mask(ground as u32)
}

fn low_mask(c: u32) -> u64 {
    if c >= 64 {
        u64::MAX
    } else {
        (1u64 << c) - 1
    }
}

/// The element mask using the first `m[v]` copies at each vertex.
fn first_copies_mask(roots: &RootMultiset, m: &[u32]) -> u64 {
    let mut mask = 0u64;
    let mut offset = 0u32;
    for (v, &c) in roots.counts().iter().enumerate() {
        mask |= low_mask(m[v]) << offset;
        offset += c;
    }
    mask
}

/// JSON form: `{"kind":"free"}`, `{"kind":"uniform","rank":k}` or
/// `{"kind":"table","rank_of":{"<subset-bitmask>":rank,...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidJson {
    Free,
    Uniform { rank: u32 },
    Table { rank_of: BTreeMap<String, u32> },
}

impl MatroidJson {
    pub fn to_oracle(&self, ground: usize, caps: &Caps) -> Result<MatroidOracle> {
        match self {
            MatroidJson::Free => Ok(MatroidOracle::free(ground)),
            MatroidJson::Uniform { rank } => Ok(MatroidOracle::uniform(ground, *rank)),
            MatroidJson::Table { rank_of } => {
                if ground > 16 {
                    return Err(Error::cap("table matroid ground exceeds 16".to_string()));
                }
                let mut table = vec![u32::MAX; 1 << ground];
                for (k, &r) in rank_of {
                    let mask: usize = k
                        .parse()
                        .map_err(|_| Error::input(format!("bad subset bitmask {k:?}")))?;
                    if mask >= table.len() {
                        return Err(Error::input(format!("subset bitmask {mask} out of range")));
                    }
                    table[mask] = r;
                }
                if table.iter().any(|&r| r == u32::MAX) {
                    return Err(Error::input("rank table is missing subsets".to_string()));
                }
                MatroidOracle::from_table(ground, table, caps)
            }
        }
    }
}

/// JSON form of a root multiset: `{"<vertex>": multiplicity, ...}`.
pub fn roots_from_json(map: &BTreeMap<String, u32>, n: usize) -> Result<RootMultiset> {
    let mut counts = vec![0u32; n];
    for (k, &c) in map {
        let v: usize = k
            .parse()
            .map_err(|_| Error::input(format!("bad vertex key {k:?}")))?;
        if v >= n {
            return Err(Error::input(format!("root vertex {v} out of range")));
        }
        counts[v] = c;
    }
    Ok(RootMultiset::new(counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let free = MatroidOracle::free(3);
        assert_eq!(free.rank(0b111), 3);
        assert_eq!(free.rank(0), 0);
        let uni = MatroidOracle::uniform(3, 2);
        assert_eq!(uni.rank(0b111), 2);
        assert_eq!(uni.rank(0b011), 2);
        assert_eq!(uni.rank(0), 0);
    }

    #[test]
    fn table_validation() {
        let caps = Caps::default();
        // U_{2,1}: rank 0,1,1,1
        let ok = MatroidOracle::from_table(2, vec![0, 1, 1, 1], &caps).unwrap();
        assert_eq!(ok.rank(0b11), 1);
        // not subcardinal
        assert!(MatroidOracle::from_table(1, vec![0, 2], &caps).is_err());
        // decreasing
        assert!(MatroidOracle::from_table(2, vec![0, 1, 1, 0], &caps).is_err());
        // not submodular: r({a})=r({b})=0 but r({a,b})=1
        assert!(MatroidOracle::from_table(2, vec![0, 0, 0, 1], &caps).is_err());
        // r(empty) != 0
        assert!(MatroidOracle::from_table(1, vec![1, 1], &caps).is_err());
    }

    #[test]
    fn restriction_masks() {
        let s = RootMultiset::new(vec![2, 0, 1]);
        assert_eq!(s.total(), 3);
        assert_eq!(s.restriction_mask(0b001), 0b011);
        assert_eq!(s.restriction_mask(0b100), 0b100);
        assert_eq!(s.restriction_mask(0b111), 0b111);
        assert_eq!(s.profile_of_mask(0b101), vec![1, 0, 1]);
        assert_eq!(s.vertex_of(1), 0);
        assert_eq!(s.vertex_of(2), 2);
    }

    #[test]
    fn profile_search_examples() {
        let caps = Caps::default();
        // free matroid, two copies at v0
        let s = RootMultiset::new(vec![2]);
        let free = MatroidOracle::free(2);
        assert_eq!(free.independent_with_profile(&s, &[2], &caps).unwrap(), Some(0b11));
        // uniform rank 1, m(v0)=2 -> none
        let uni1 = MatroidOracle::uniform(2, 1);
        assert_eq!(uni1.independent_with_profile(&s, &[2], &caps).unwrap(), None);
        // uniform rank 2 over copies at {v0,v0,v1}
        let s = RootMultiset::new(vec![2, 1]);
        let uni2 = MatroidOracle::uniform(3, 2);
        assert_eq!(
            uni2.independent_with_profile(&s, &[1, 1], &caps).unwrap(),
            Some(0b101)
        );
        // profile above multiplicity -> none
        assert_eq!(uni2.independent_with_profile(&s, &[0, 2], &caps).unwrap(), None);
    }

    #[test]
    fn profile_search_table_lexicographic() {
        let caps = Caps::default();
        // ground {0,1} at v0 twice; uniform-as-table so both singletons work,
        // the lexicographically least ({0}) must win.
        let s = RootMultiset::new(vec![2]);
        let t = MatroidOracle::from_table(2, vec![0, 1, 1, 1], &caps).unwrap();
        assert_eq!(t.independent_with_profile(&s, &[1], &caps).unwrap(), Some(0b01));
        assert_eq!(t.independent_with_profile(&s, &[2], &caps).unwrap(), None);
    }

    /// The profile search contract: success iff exhaustive subset search finds
    /// an independent set with that exact profile.
    #[test]
    fn profile_search_matches_exhaustive() {
        let caps = Caps::default();
        let s = RootMultiset::new(vec![2, 1, 1]);
        let oracles = vec![
            MatroidOracle::free(4),
            MatroidOracle::uniform(4, 2),
            MatroidOracle::from_table(4, (0..16u64).map(|x| x.count_ones().min(3)).collect(), &caps)
                .unwrap(),
        ];
        for m in 0..(1u64 << 4) {
            for oracle in &oracles {
                for p0 in 0..=2u32 {
                    for p1 in 0..=1u32 {
                        for p2 in 0..=1u32 {
                            let prof = vec![p0, p1, p2];
                            let got = oracle
                                .independent_with_profile(&s, &prof, &caps)
                                .unwrap()
                                .is_some();
                            let want = (0..(1u64 << 4)).any(|mask| {
                                s.profile_of_mask(mask) == prof && oracle.is_independent(mask)
                            });
                            assert_eq!(got, want, "profile {prof:?} mask {m}");
                        }
                    }
                }
            }
        }
    }
}
