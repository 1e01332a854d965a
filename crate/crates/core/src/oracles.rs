//! Brute-force ground truth: exhaustive packing search, minimum augmentation
//! by growing addition size, and border-count profiles. Everything here is
//! deliberately slow and simple; the checkers are tested against it.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypercore::{
    bits, card, for_each_partition, for_each_subpartition_capped, MixedHypergraph, VertSet,
};
use crate::verify::{verify_packing, MemberWitness, PackingWitness, Requirements};
use crate::verify::orient_to_hyperbranching;

/// One feasible member shape: which edges it uses, its roots and vertex set,
/// and a concrete orientation/trim proving it is a hyperbranching.
#[derive(Debug, Clone)]
pub struct MemberConfig {
    /// Bit i set = edge i used (hyperedges first, then dyperedges).
    pub edge_mask: u64,
    pub roots: VertSet,
    pub vertices: VertSet,
    pub hyperedges: Vec<(usize, usize)>,
    pub dyperedges: Vec<(usize, usize)>,
}

impl MemberConfig {
    fn to_member(&self) -> MemberWitness {
        MemberWitness {
            vertices: self.vertices,
            roots: self.roots,
            hyperedges: self.hyperedges.clone(),
            dyperedges: self.dyperedges.clone(),
        }
    }
}

fn check_oracle_caps(g: &MixedHypergraph, caps: &Caps) -> Result<()> {
    if g.n() > caps.oracle_n {
        return Err(Error::cap(format!(
            "oracle on {} vertices exceeds cap {}",
            g.n(),
            caps.oracle_n
        )));
    }
    if g.edge_count() > caps.oracle_edges {
        return Err(Error::cap(format!(
            "oracle on {} edges exceeds cap {}",
            g.edge_count(),
            caps.oracle_edges
        )));
    }
    Ok(())
}

/// Every valid member over the instance, in a deterministic order
/// (ascending edge mask, then roots, then vertex set). The empty member is
/// included only when `allow_empty` is set.
pub fn member_configs(
    g: &MixedHypergraph,
    req: &Requirements,
    allow_empty: bool,
    caps: &Caps,
) -> Result<Vec<MemberConfig>> {
    let nh = g.hyperedges().len();
    let ne = g.edge_count();
    let n = g.n();
    let full = g.full();
    let mut out = Vec::new();
    if allow_empty && !req.spanning && !req.single_root {
        out.push(MemberConfig {
            edge_mask: 0,
            roots: 0,
            vertices: 0,
            hyperedges: vec![],
            dyperedges: vec![],
        });
    }
    for edge_mask in 0u64..(1u64 << ne) {
        let b = edge_mask.count_ones() as usize;
        if b >= n {
            // |U| = |S| + |B| and |S| >= 1, so more than n-1 edges never fit
            continue;
        }
        if req.hyperforest && edge_mask >> nh != 0 {
            continue;
        }
        let hyper_idx: Vec<usize> = (0..nh).filter(|&i| edge_mask >> i & 1 == 1).collect();
        let dyper_idx: Vec<usize> =
            (nh..ne).filter(|&i| edge_mask >> i & 1 == 1).map(|i| i - nh).collect();
        let hypers: Vec<VertSet> = hyper_idx.iter().map(|&i| g.hyperedges()[i]).collect();
        let dyps: Vec<(VertSet, usize)> = dyper_idx
            .iter()
            .map(|&i| {
                let d = &g.dyperedges()[i];
                (d.tails, d.head)
            })
            .collect();
        let mut base: VertSet = hypers.iter().copied().fold(0, |a, z| a | z);
        for &(t, h) in &dyps {
            base |= t | (1u64 << h);
        }
        for roots in 1u64..=full {
            if roots & !full != 0 {
                continue;
            }
            let s = card(roots);
            if req.single_root && s != 1 {
                continue;
            }
            let need = s + b;
            if need > n {
                continue;
            }
            let seed = base | roots;
            if card(seed) > need {
                continue;
            }
            if req.spanning && need != n {
                continue;
            }
            // enumerate vertex sets of the forced cardinality containing seed
            let extra_pool = full & !seed;
            let want = need - card(seed);
            for_each_k_subset(extra_pool, want, &mut |extra| {
                let u = seed | extra;
                if req.spanning && u != full {
                    return Ok(());
                }
                if let Some((heads, tails)) = orient_to_hyperbranching(&hypers, &dyps, roots, u, caps)? {
                    out.push(MemberConfig {
                        edge_mask,
                        roots,
                        vertices: u,
                        hyperedges: hyper_idx.iter().copied().zip(heads).collect(),
                        dyperedges: dyper_idx.iter().copied().zip(tails).collect(),
                    });
                }
                Ok(())
            })?;
        }
        // rootless members are impossible (every hyperbranching has roots),
        // so roots starts at 1 above
    }
    Ok(out)
}

/// Visit every subset of `pool` with exactly `k` bits, ascending.
fn for_each_k_subset(
    pool: VertSet,
    k: usize,
    f: &mut impl FnMut(VertSet) -> Result<()>,
) -> Result<()> {
    let elems: Vec<usize> = bits(pool).collect();
    fn rec(
        elems: &[usize],
        start: usize,
        k: usize,
        acc: VertSet,
        f: &mut impl FnMut(VertSet) -> Result<()>,
    ) -> Result<()> {
        if k == 0 {
            return f(acc);
        }
        if elems.len() - start < k {
            return Ok(());
        }
        for i in start..elems.len() {
            rec(elems, i + 1, k - 1, acc | (1u64 << elems[i]), f)?;
        }
        Ok(())
    }
    rec(&elems, 0, k, 0, f)
}

/// Does a packing with the given attributes exist? Returns the first witness
/// found in a deterministic search order, or `None`. Needs either a member
/// count `k` or a regularity `h` in the requirements.
pub fn exists_packing_bf(
    g: &MixedHypergraph,
    req: &Requirements,
    caps: &Caps,
) -> Result<Option<PackingWitness>> {
    check_oracle_caps(g, caps)?;
    let allow_empty = req.ell.as_ref().map_or(false, |l| l.iter().any(|&x| x == 0));
    let configs = member_configs(g, req, allow_empty, caps)?;
    match (req.k, req.h) {
        (Some(k), _) => search_fixed_count(g, req, &configs, k, caps),
        (None, Some(h)) => search_regular(g, req, &configs, h, caps),
        (None, None) => Err(Error::input(
            "packing oracle needs a member count or a regularity target".to_string(),
        )),
    }
}

fn per_index_constrained(req: &Requirements) -> bool {
    req.ell.is_some() || req.fixed_root_sets.is_some()
}

fn config_fits_index(req: &Requirements, c: &MemberConfig, i: usize) -> bool {
    if let Some(sets) = &req.fixed_root_sets {
        if c.roots != sets[i] {
            return false;
        }
    }
    if let (Some(ell), Some(ellp)) = (&req.ell, &req.ell_prime) {
        let s = card(c.roots) as u32;
        if s < ell[i] || s > ellp[i] {
            return false;
        }
    }
    true
}

fn coverage_ok(req: &Requirements, g: &MixedHypergraph, chosen: &[&MemberConfig]) -> bool {
    if let Some(h) = req.h {
        for v in 0..g.n() {
            let c = chosen.iter().filter(|m| m.vertices >> v & 1 == 1).count() as u32;
            if c > h {
                return false;
            }
        }
    }
    if let Some((_, beta)) = req.alpha_beta {
        let total: usize = chosen.iter().map(|m| card(m.roots)).sum();
        if total as u32 > beta {
            return false;
        }
    }
    if let Some(gb) = &req.g {
        for v in 0..g.n() {
            let c = chosen.iter().filter(|m| m.roots >> v & 1 == 1).count() as u32;
            if c > gb[v] {
                return false;
            }
        }
    }
    if let Some(fixed) = &req.fixed_roots {
        for v in 0..g.n() {
            let c = chosen.iter().filter(|m| m.roots >> v & 1 == 1).count() as u32;
            if c > fixed.count(v) {
                return false;
            }
        }
    }
    true
}

fn leaf_check(
    g: &MixedHypergraph,
    req: &Requirements,
    chosen: &[&MemberConfig],
) -> Result<Option<PackingWitness>> {
    let w = PackingWitness {
        members: chosen.iter().map(|c| c.to_member()).collect(),
        ..Default::default()
    };
    if verify_packing(g, &w, req)?.ok {
        Ok(Some(w))
    } else {
        Ok(None)
    }
}

fn search_fixed_count(
    g: &MixedHypergraph,
    req: &Requirements,
    configs: &[MemberConfig],
    k: usize,
    _caps: &Caps,
) -> Result<Option<PackingWitness>> {
    let indexed = per_index_constrained(req);
    fn rec<'a>(
        g: &MixedHypergraph,
        req: &Requirements,
        configs: &'a [MemberConfig],
        k: usize,
        indexed: bool,
        chosen: &mut Vec<&'a MemberConfig>,
        used: u64,
        from: usize,
    ) -> Result<Option<PackingWitness>> {
        if chosen.len() == k {
            return leaf_check(g, req, chosen);
        }
        let start = if indexed { 0 } else { from };
        for (ci, c) in configs.iter().enumerate().skip(start) {
            if c.edge_mask & used != 0 {
                continue;
            }
            if !config_fits_index(req, c, chosen.len()) {
                continue;
            }
            chosen.push(c);
            if coverage_ok(req, g, chosen) {
                if let Some(w) =
                    rec(g, req, configs, k, indexed, chosen, used | c.edge_mask, ci)?
                {
                    return Ok(Some(w));
                }
            }
            chosen.pop();
        }
        Ok(None)
    }
    let mut chosen = Vec::new();
    rec(g, req, configs, k, indexed, &mut chosen, 0, 0)
}

/// Member count is free; every vertex must end in exactly `h` members. The
/// search always extends the lowest under-covered vertex, which makes it
/// complete: some member of any valid packing covers that vertex.
fn search_regular(
    g: &MixedHypergraph,
    req: &Requirements,
    configs: &[MemberConfig],
    h: u32,
    _caps: &Caps,
) -> Result<Option<PackingWitness>> {
    fn lowest_deficient(g: &MixedHypergraph, chosen: &[&MemberConfig], h: u32) -> Option<usize> {
        (0..g.n()).find(|&v| {
            (chosen.iter().filter(|m| m.vertices >> v & 1 == 1).count() as u32) < h
        })
    }
    fn rec<'a>(
        g: &MixedHypergraph,
        req: &Requirements,
        configs: &'a [MemberConfig],
        h: u32,
        chosen: &mut Vec<&'a MemberConfig>,
        used: u64,
        last: (usize, usize), // (deficient vertex, config index) of previous pick
    ) -> Result<Option<PackingWitness>> {
        let v = match lowest_deficient(g, chosen, h) {
            None => return leaf_check(g, req, chosen),
            Some(v) => v,
        };
        // members covering the same deficient vertex are interchangeable, so
        // demand a non-decreasing config index there to skip permutations
        let floor = if last.0 == v { last.1 } else { 0 };
        for (ci, c) in configs.iter().enumerate().skip(floor) {
            if c.vertices >> v & 1 == 0 || c.edge_mask & used != 0 {
                continue;
            }
            chosen.push(c);
            if coverage_ok(req, g, chosen) {
                if let Some(w) = rec(g, req, configs, h, chosen, used | c.edge_mask, (v, ci))? {
                    return Ok(Some(w));
                }
            }
            chosen.pop();
        }
        Ok(None)
    }
    let mut chosen = Vec::new();
    rec(g, req, configs, h, &mut chosen, 0, (usize::MAX, 0))
}

/// What kind of additions the augmentation oracle may make.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugmentMode {
    /// Directed arcs (u, v), any ordered pair of distinct vertices.
    Arcs,
    /// Undirected graph edges {u, v}.
    Edges,
}

/// The smallest set of additions (by count, then lexicographically) whose
/// augmented instance has a feasible packing, searched up to `max_gamma`
/// additions. `must_use` bits in the requirements refer to the original
/// instance's edge numbering and are remapped onto each augmented copy.
pub fn min_augment_bf(
    g: &MixedHypergraph,
    req: &Requirements,
    mode: AugmentMode,
    max_gamma: u32,
    caps: &Caps,
) -> Result<Option<(Vec<(usize, usize)>, PackingWitness)>> {
    let n = g.n();
    let candidates: Vec<(usize, usize)> = match mode {
        AugmentMode::Arcs => (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect(),
        AugmentMode::Edges => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
    };
    for gamma in 0..=max_gamma {
        if g.edge_count() + gamma as usize > caps.oracle_edges {
            return Err(Error::cap(format!(
                "augmentation by {gamma} additions exceeds the oracle edge cap {}",
                caps.oracle_edges
            )));
        }
        let mut picks = vec![0usize; gamma as usize];
        if let Some(found) = augment_level(g, req, mode, &candidates, &mut picks, 0, 0, caps)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn augment_level(
    g: &MixedHypergraph,
    req: &Requirements,
    mode: AugmentMode,
    candidates: &[(usize, usize)],
    picks: &mut Vec<usize>,
    depth: usize,
    from: usize,
    caps: &Caps,
) -> Result<Option<(Vec<(usize, usize)>, PackingWitness)>> {
    if depth == picks.len() {
        let added: Vec<(usize, usize)> = picks.iter().map(|&i| candidates[i]).collect();
        let aug = match mode {
            AugmentMode::Arcs => g.with_added_arcs(&added)?,
            AugmentMode::Edges => g.with_added_edges(&added)?,
        };
        let mut aug_req = req.clone();
        if mode == AugmentMode::Edges && req.must_use != 0 {
            // the appended hyperedges shift the dyperedge half of the index
            let nh = g.hyperedges().len();
            let low = req.must_use & ((1u64 << nh) - 1);
            let high = req.must_use >> nh;
            aug_req.must_use = low | high << (nh + added.len());
        }
        let found = exists_packing_bf(&aug, &aug_req, caps)?;
        if let Some(mut w) = found {
            match mode {
                AugmentMode::Arcs => w.added_arcs = added.clone(),
                AugmentMode::Edges => w.added_edges = added.clone(),
            }
            return Ok(Some((added, w)));
        }
        return Ok(None);
    }
    for i in from..candidates.len() {
        picks[depth] = i;
        if let Some(found) = augment_level(g, req, mode, candidates, picks, depth + 1, i, caps)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Which edges count toward a border.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BorderKind {
    /// Hyperedges and dyperedges.
    Mixed,
    /// Dyperedges only.
    Directed,
}

/// `profile[p] = min { e(P) : |P| = p }` over subpartitions (or, with
/// `partitions_only`, over partitions of the whole vertex set). `profile[0]`
/// is 0 and unused.
pub fn e_profile(
    g: &MixedHypergraph,
    kind: BorderKind,
    partitions_only: bool,
    caps: &Caps,
) -> Result<Vec<u64>> {
    let n = g.n();
    let mut profile = vec![u64::MAX; n + 1];
    profile[0] = 0;
    let mut record = |blocks: &[VertSet]| {
        if blocks.is_empty() {
            return;
        }
        let e = match kind {
            BorderKind::Mixed => g.border_count(blocks),
            BorderKind::Directed => g.border_count_directed(blocks),
        } as u64;
        let p = blocks.len();
        if e < profile[p] {
            profile[p] = e;
        }
    };
    if partitions_only {
        if n > caps.subpartition_ground {
            return Err(Error::cap(format!(
                "partition enumeration over {n} elements exceeds cap {}",
                caps.subpartition_ground
            )));
        }
        for_each_partition(g.full(), &mut record);
    } else {
        for_each_subpartition_capped(g.full(), caps, &mut record)?;
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::Dyperedge;

    fn caps() -> Caps {
        Caps::default()
    }

    fn path2() -> MixedHypergraph {
        MixedHypergraph::digraph(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn one_arborescence_on_a_path() {
        let g = path2();
        let req = Requirements {
            k: Some(1),
            spanning: true,
            single_root: true,
            ..Default::default()
        };
        let w = exists_packing_bf(&g, &req, &caps()).unwrap().unwrap();
        assert_eq!(w.members.len(), 1);
        assert_eq!(w.members[0].roots, 0b001);
        // two arborescences cannot share the two arcs
        let req2 = Requirements { k: Some(2), ..req };
        assert!(exists_packing_bf(&g, &req2, &caps()).unwrap().is_none());
    }

    #[test]
    fn two_arborescences_on_doubled_star() {
        let g = MixedHypergraph::digraph(3, &[(0, 1), (0, 2), (0, 1), (0, 2)]).unwrap();
        let req = Requirements {
            k: Some(2),
            spanning: true,
            single_root: true,
            ..Default::default()
        };
        let w = exists_packing_bf(&g, &req, &caps()).unwrap().unwrap();
        assert_eq!(w.members.len(), 2);
    }

    #[test]
    fn hyperedge_member_orientation() {
        // a single hyperedge {0,1,2} plus arc 0->1 packs one spanning
        // hyperbranching rooted at 0 (orient the hyperedge to head 2)
        let g = MixedHypergraph::new(3, vec![0b111], vec![Dyperedge { tails: 0b001, head: 1 }])
            .unwrap();
        let req = Requirements {
            k: Some(1),
            spanning: true,
            single_root: true,
            ..Default::default()
        };
        let w = exists_packing_bf(&g, &req, &caps()).unwrap().unwrap();
        assert!(verify_packing(&g, &w, &req).unwrap().ok);
    }

    #[test]
    fn regular_search_without_member_count() {
        // h = 1 spanning members of an edgeless 1-vertex graph: one member,
        // the root itself
        let g = MixedHypergraph::new(1, vec![], vec![]).unwrap();
        let req = Requirements { h: Some(1), ..Default::default() };
        let w = exists_packing_bf(&g, &req, &caps()).unwrap().unwrap();
        assert_eq!(w.members.len(), 1);
        assert_eq!(w.members[0].roots, 0b1);
    }

    #[test]
    fn min_augment_on_path_needs_nothing() {
        let g = path2();
        let req = Requirements {
            k: Some(1),
            spanning: true,
            single_root: true,
            ..Default::default()
        };
        let (added, _) = min_augment_bf(&g, &req, AugmentMode::Arcs, 2, &caps())
            .unwrap()
            .unwrap();
        assert!(added.is_empty());
    }

    #[test]
    fn min_augment_counts_missing_arcs() {
        // edgeless on 3 vertices: a spanning arborescence needs 2 arcs
        let g = MixedHypergraph::new(3, vec![], vec![]).unwrap();
        let req = Requirements {
            k: Some(1),
            spanning: true,
            single_root: true,
            ..Default::default()
        };
        let (added, w) = min_augment_bf(&g, &req, AugmentMode::Arcs, 3, &caps())
            .unwrap()
            .unwrap();
        assert_eq!(added.len(), 2);
        assert_eq!(added, vec![(0, 1), (0, 2)]); // lexicographically least
        assert!(verify_packing(&g, &w, &req).unwrap().ok);
    }

    #[test]
    fn e_profile_of_star() {
        let g = MixedHypergraph::digraph(3, &[(0, 1), (0, 2)]).unwrap();
        let prof = e_profile(&g, BorderKind::Directed, false, &caps()).unwrap();
        // one block avoiding both heads has border 0; any 3-block partition
        // isolates both heads
        assert_eq!(prof[1], 0);
        assert_eq!(prof[3], 2);
    }
}
