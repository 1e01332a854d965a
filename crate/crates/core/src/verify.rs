//! Decide whether members are (spanning) hyperbranchings via trimming and
//! orientation, and validate full packing witnesses attribute by attribute.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypercore::{bits, card, Dyperedge, MixedHypergraph, VertSet};
use crate::matroids::{MatroidOracle, RootMultiset};

/// One member of a packing: its vertex set, root set, and the hyperedges and
/// dyperedges it uses together with the chosen orientation head / trim tail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberWitness {
    /// U_i as a bitmask.
    pub vertices: VertSet,
    /// S_i as a bitmask, subset of `vertices`.
    pub roots: VertSet,
    /// (hyperedge index in the instance, chosen head vertex).
    #[serde(default)]
    pub hyperedges: Vec<(usize, usize)>,
    /// (dyperedge index in the instance, chosen tail vertex).
    #[serde(default)]
    pub dyperedges: Vec<(usize, usize)>,
}

impl MemberWitness {
    pub fn edge_count(&self) -> usize {
        self.hyperedges.len() + self.dyperedges.len()
    }
}

/// An explicit packing: members plus any arcs/edges appended to the instance
/// by an augmentation (referenced by the members as ordinary edge indices
/// past the instance's own lists).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct PackingWitness {
    pub members: Vec<MemberWitness>,
    /// Arcs added by augmentation, appended after the instance's dyperedges.
    #[serde(default)]
    pub added_arcs: Vec<(usize, usize)>,
    /// Undirected edges added by augmentation, appended after the instance's
    /// hyperedges.
    #[serde(default)]
    pub added_edges: Vec<(usize, usize)>,
}

impl PackingWitness {
    /// Total root count Σ|S_i|.
    pub fn total_roots(&self) -> usize {
        self.members.iter().map(|m| card(m.roots)).sum()
    }

    /// Per-vertex root multiset R of the packing.
    pub fn root_profile(&self, n: usize) -> Vec<u32> {
        let mut prof = vec![0u32; n];
        for m in &self.members {
            for v in bits(m.roots) {
                prof[v] += 1;
            }
        }
        prof
    }
}

/// Which attributes a packing must satisfy; only the ones present are
/// enforced by [`verify_packing`].
#[derive(Debug, Clone, Default)]
pub struct Requirements {
    /// Exact member count.
    pub k: Option<usize>,
    /// h-regular: every vertex belongs to exactly h members.
    pub h: Option<u32>,
    /// Every member spans V.
    pub spanning: bool,
    /// Every member has exactly one root (arborescence-style).
    pub single_root: bool,
    /// (f,g)-bounded per-vertex root multiplicities.
    pub f: Option<Vec<u32>>,
    pub g: Option<Vec<u32>>,
    /// (α,β)-limited total root count Σ|S_i|.
    pub alpha_beta: Option<(u32, u32)>,
    /// (ℓ,ℓ′)-bordered per-member root set sizes.
    pub ell: Option<Vec<u32>>,
    pub ell_prime: Option<Vec<u32>>,
    /// The packing's root multiset must equal this multiset exactly.
    pub fixed_roots: Option<RootMultiset>,
    /// Member i must have exactly this root set.
    pub fixed_root_sets: Option<Vec<VertSet>>,
    /// Matroid constraint on the packing's root multiset.
    pub matroid: Option<MatroidRequirement>,
    /// Members must contain no dyperedges (rooted hyperforests).
    pub hyperforest: bool,
    /// Edge indices (hyperedges then dyperedges, instance numbering) that the
    /// packing must use. Carries the "packing contains F" side condition.
    pub must_use: u64,
}

#[derive(Debug, Clone)]
pub struct MatroidRequirement {
    pub roots: RootMultiset,
    pub oracle: MatroidOracle,
    /// Independent-rooted when false, basis-rooted when true.
    pub basis: bool,
}

/// Per-attribute verification outcome with the first counterexample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttributeReport {
    pub attribute: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub ok: bool,
    pub attributes: Vec<AttributeReport>,
}

impl Report {
    fn push(&mut self, attribute: &str, ok: bool, detail: String) {
        self.ok &= ok;
        self.attributes.push(AttributeReport { attribute: attribute.to_string(), ok, detail });
    }
}

/// One tail choice per dyperedge so the resulting arcs form an S-branching
/// on U (roots in-degree 0, every other vertex in-degree 1 and reachable
/// from S), or `None`. Exhaustive over tail choices after a fast necessary
/// pre-filter; the least assignment in tail order wins.
pub fn trimmable_to_branching(
    dyps: &[(VertSet, usize)],
    s: VertSet,
    u: VertSet,
    caps: &Caps,
) -> Result<Option<Vec<usize>>> {
    for &(tails, head) in dyps {
        if (tails | (1u64 << head)) & !u != 0 {
            return Err(Error::input("dyperedge vertex outside member vertex set".to_string()));
        }
    }
    if s & !u != 0 {
        return Err(Error::input("root set outside member vertex set".to_string()));
    }
    if !branching_prefilter(dyps, s, u) {
        return Ok(None);
    }
    let product: u64 = dyps.iter().map(|&(t, _)| card(t) as u64).product();
    if product > caps.trim_product {
        return Err(Error::cap(format!(
            "trim search of {product} tail assignments exceeds cap {}",
            caps.trim_product
        )));
    }
    let mut choice: Vec<usize> = Vec::with_capacity(dyps.len());
    if trim_dfs(dyps, s, u, &mut choice) {
        Ok(Some(choice))
    } else {
        Ok(None)
    }
}

/// Necessary conditions: |B| = |U| - |S|, every non-root vertex of U is a
/// head exactly once, roots are never heads, and every nonempty X ⊆ U-S is
/// entered by some dyperedge (within U).
pub fn branching_prefilter(dyps: &[(VertSet, usize)], s: VertSet, u: VertSet) -> bool {
    if dyps.len() != card(u) - card(s) {
        return false;
    }
    let mut head_seen: VertSet = 0;
    for &(_, head) in dyps {
        let bit = 1u64 << head;
        if bit & s != 0 || bit & head_seen != 0 || bit & u == 0 {
            return false;
        }
        head_seen |= bit;
    }
    if head_seen != u & !s {
        return false;
    }
    // every nonempty X ⊆ U-S must be entered (head in X, some tail in U-X)
    let free = u & !s;
    let mut x = free;
    while x != 0 {
        let entered = dyps
            .iter()
            .any(|&(tails, head)| (x >> head) & 1 == 1 && tails & (u & !x) != 0);
        if !entered {
            return false;
        }
        x = (x - 1) & free;
    }
    true
}

fn trim_dfs(dyps: &[(VertSet, usize)], s: VertSet, u: VertSet, choice: &mut Vec<usize>) -> bool {
    if choice.len() == dyps.len() {
        return is_branching(dyps, choice, s, u);
    }
    let (tails, _) = dyps[choice.len()];
    for y in bits(tails) {
        choice.push(y);
        if trim_dfs(dyps, s, u, choice) {
            return true;
        }
        choice.pop();
    }
    false
}

/// Check that the trimmed arcs (tail `choice[i]` -> head of dyperedge i) form
/// an S-branching on U.
pub fn is_branching(dyps: &[(VertSet, usize)], choice: &[usize], s: VertSet, u: VertSet) -> bool {
    if dyps.len() != card(u) - card(s) {
        return false;
    }
    let mut parent = [usize::MAX; 64];
    for (i, &(_, head)) in dyps.iter().enumerate() {
        if (s >> head) & 1 == 1 || parent[head] != usize::MAX {
            return false;
        }
        parent[head] = choice[i];
    }
    // every non-root vertex of U must have a parent and reach S
    for v in bits(u & !s) {
        if parent[v] == usize::MAX {
            return false;
        }
        let mut cur = v;
        let mut steps = 0;
        while (s >> cur) & 1 == 0 {
            cur = parent[cur];
            steps += 1;
            if steps > 64 {
                return false; // cycle
            }
        }
    }
    true
}

/// A head choice per hyperedge and trim per dyperedge certifying that the
/// mixed member is an S-hyperbranching on U, or `None`. Exhaustive over
/// orientation heads.
pub fn orient_to_hyperbranching(
    hyperedges: &[VertSet],
    dyps: &[(VertSet, usize)],
    s: VertSet,
    u: VertSet,
    caps: &Caps,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    for &z in hyperedges {
        if z & !u != 0 {
            return Err(Error::input("hyperedge vertex outside member vertex set".to_string()));
        }
    }
    if hyperedges.len() + dyps.len() != card(u) - card(s) {
        return Ok(None);
    }
    let mut heads: Vec<usize> = Vec::with_capacity(hyperedges.len());
    orient_dfs(hyperedges, dyps, s, u, caps, &mut heads)
}

fn orient_dfs(
    hyperedges: &[VertSet],
    dyps: &[(VertSet, usize)],
    s: VertSet,
    u: VertSet,
    caps: &Caps,
    heads: &mut Vec<usize>,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if heads.len() == hyperedges.len() {
        let mut all: Vec<(VertSet, usize)> = hyperedges
            .iter()
            .zip(heads.iter())
            .map(|(&z, &h)| (z & !(1u64 << h), h))
            .collect();
        all.extend_from_slice(dyps);
        if let Some(choice) = trimmable_to_branching(&all, s, u, caps)? {
            let (hyper_tails, dyper_tails) = choice.split_at(hyperedges.len());
            // report the orientation as (head per hyperedge, tail per
            // hyperedge is implied by the branching trim) — callers get the
            // heads plus the dyperedge trims
            let _ = hyper_tails;
            return Ok(Some((heads.clone(), dyper_tails.to_vec())));
        }
        return Ok(None);
    }
    let z = hyperedges[heads.len()];
    for h in bits(z) {
        heads.push(h);
        if let Some(found) = orient_dfs(hyperedges, dyps, s, u, caps, heads)? {
            return Ok(Some(found));
        }
        heads.pop();
    }
    Ok(None)
}

/// Resolve a witness against the instance: apply added arcs/edges and check
/// that all referenced indices exist and are used at most once.
fn resolve(h: &MixedHypergraph, w: &PackingWitness) -> Result<MixedHypergraph> {
    let g = h.with_added_edges(&w.added_edges)?.with_added_arcs(&w.added_arcs)?;
    let mut hyper_used = vec![false; g.hyperedges().len()];
    let mut dyper_used = vec![false; g.dyperedges().len()];
    for (mi, m) in w.members.iter().enumerate() {
        for &(i, _) in &m.hyperedges {
            if i >= hyper_used.len() {
                return Err(Error::input(format!("member {mi} references missing hyperedge {i}")));
            }
            if hyper_used[i] {
                return Err(Error::input(format!("hyperedge {i} used by two members")));
            }
            hyper_used[i] = true;
        }
        for &(i, _) in &m.dyperedges {
            if i >= dyper_used.len() {
                return Err(Error::input(format!("member {mi} references missing dyperedge {i}")));
            }
            if dyper_used[i] {
                return Err(Error::input(format!("dyperedge {i} used by two members")));
            }
            dyper_used[i] = true;
        }
    }
    Ok(g)
}

/// Validate a packing witness against every requested attribute. Dangling
/// references are input errors, distinct from verification failures.
pub fn verify_packing(h: &MixedHypergraph, w: &PackingWitness, r: &Requirements) -> Result<Report> {
    let g = resolve(h, w)?;
    let mut report = Report { ok: true, attributes: Vec::new() };

    // structural: each member is an S_i-hyperbranching on U_i under its
    // chosen orientation and trims
    let mut structural_ok = true;
    let mut detail = String::from("all members are hyperbranchings");
    'members: for (mi, m) in w.members.iter().enumerate() {
        if m.roots & !m.vertices != 0 {
            structural_ok = false;
            detail = format!("member {mi}: roots outside vertex set");
            break;
        }
        if m.vertices & !g.full() != 0 {
            return Err(Error::input(format!("member {mi}: vertex out of range")));
        }
        if m.vertices == 0 {
            if m.roots != 0 || m.edge_count() != 0 {
                structural_ok = false;
                detail = format!("member {mi}: empty vertex set but nonempty content");
                break;
            }
            report.push(
                "empty-member",
                true,
                format!("member {mi} has an empty vertex set (allowed only with a zero border)"),
            );
            continue;
        }
        let mut arcs: Vec<(VertSet, usize)> = Vec::new();
        let mut choice: Vec<usize> = Vec::new();
        for &(i, head) in &m.hyperedges {
            let z = g.hyperedges()[i];
            if (z >> head) & 1 == 0 {
                structural_ok = false;
                detail = format!("member {mi}: orientation head not in hyperedge {i}");
                break 'members;
            }
            if z & !m.vertices != 0 {
                structural_ok = false;
                detail = format!("member {mi}: hyperedge {i} leaves the vertex set");
                break 'members;
            }
            arcs.push((z & !(1u64 << head), head));
            choice.push(usize::MAX); // tail filled below
        }
        for &(i, tail) in &m.dyperedges {
            let d = &g.dyperedges()[i];
            if (d.tails >> tail) & 1 == 0 {
                structural_ok = false;
                detail = format!("member {mi}: trim tail not in dyperedge {i}");
                break 'members;
            }
            if (d.tails | (1u64 << d.head)) & !m.vertices != 0 {
                structural_ok = false;
                detail = format!("member {mi}: dyperedge {i} leaves the vertex set");
                break 'members;
            }
            arcs.push((d.tails, d.head));
            choice.push(tail);
        }
        // a trimmed hyperedge still needs a tail choice: the branching
        // structure fixes it implicitly, so search tails for oriented
        // hyperedges while dyperedge trims stay as given
        if !oriented_member_is_branching(&arcs, &choice, m.roots, m.vertices) {
            structural_ok = false;
            detail = format!("member {mi}: chosen orientation/trim is not an S-branching");
            break;
        }
    }
    report.push("hyperbranching-members", structural_ok, detail);

    if r.hyperforest {
        let bad = w
            .members
            .iter()
            .position(|m| !m.dyperedges.is_empty());
        report.push(
            "rooted-hyperforest",
            bad.is_none(),
            bad.map_or("no member uses a dyperedge".to_string(), |i| {
                format!("member {i} uses a dyperedge")
            }),
        );
    }

    if let Some(k) = r.k {
        report.push(
            "member-count",
            w.members.len() == k,
            format!("{} members, expected {k}", w.members.len()),
        );
    }

    if r.spanning {
        let bad = w.members.iter().position(|m| m.vertices != g.full());
        report.push(
            "spanning",
            bad.is_none(),
            bad.map_or("every member spans V".to_string(), |i| {
                format!("member {i} does not span V")
            }),
        );
    }

    if r.single_root {
        let bad = w.members.iter().position(|m| card(m.roots) != 1);
        report.push(
            "single-root",
            bad.is_none(),
            bad.map_or("every member has one root".to_string(), |i| {
                format!("member {i} has {} roots", card(w.members[i].roots))
            }),
        );
    }

    if let Some(h_reg) = r.h {
        let mut bad = None;
        for v in 0..g.n() {
            let c = w.members.iter().filter(|m| (m.vertices >> v) & 1 == 1).count() as u32;
            if c != h_reg {
                bad = Some((v, c));
                break;
            }
        }
        report.push(
            "h-regular",
            bad.is_none(),
            bad.map_or(format!("every vertex in exactly {h_reg} members"), |(v, c)| {
                format!("vertex {v} belongs to {c} members, expected {h_reg}")
            }),
        );
    }

    let profile = w.root_profile(g.n());
    if let Some(f) = &r.f {
        let bad = (0..g.n()).find(|&v| profile[v] < f[v]);
        report.push(
            "f-bounded",
            bad.is_none(),
            bad.map_or("root multiplicities meet the lower bounds".to_string(), |v| {
                format!("vertex {v}: {} roots < f({v}) = {}", profile[v], f[v])
            }),
        );
    }
    if let Some(gb) = &r.g {
        let bad = (0..g.n()).find(|&v| profile[v] > gb[v]);
        report.push(
            "g-bounded",
            bad.is_none(),
            bad.map_or("root multiplicities meet the upper bounds".to_string(), |v| {
                format!("vertex {v}: {} roots > g({v}) = {}", profile[v], gb[v])
            }),
        );
    }

    if let Some((alpha, beta)) = r.alpha_beta {
        let total = w.total_roots() as u32;
        report.push(
            "alpha-beta-limited",
            alpha <= total && total <= beta,
            format!("total roots {total}, required in [{alpha}, {beta}]"),
        );
    }

    if let (Some(ell), Some(ell_prime)) = (&r.ell, &r.ell_prime) {
        let mut ok = w.members.len() == ell.len();
        let mut detail = if ok {
            "root set sizes within borders".to_string()
        } else {
            format!("{} members but {} border entries", w.members.len(), ell.len())
        };
        if ok {
            for (i, m) in w.members.iter().enumerate() {
                let sz = card(m.roots) as u32;
                if sz < ell[i] || sz > ell_prime[i] {
                    ok = false;
                    detail = format!(
                        "member {i}: |S_{i}| = {sz} outside [{}, {}]",
                        ell[i], ell_prime[i]
                    );
                    break;
                }
            }
        }
        report.push("bordered", ok, detail);
    }

    if let Some(fixed) = &r.fixed_roots {
        let ok = profile == fixed.counts();
        report.push(
            "fixed-roots",
            ok,
            if ok {
                "root multiset matches".to_string()
            } else {
                format!("root profile {profile:?} differs from required {:?}", fixed.counts())
            },
        );
    }

    if let Some(sets) = &r.fixed_root_sets {
        let mut ok = w.members.len() == sets.len();
        let mut detail = "root sets match".to_string();
        if !ok {
            detail = format!("{} members but {} root sets", w.members.len(), sets.len());
        } else {
            for (i, m) in w.members.iter().enumerate() {
                if m.roots != sets[i] {
                    ok = false;
                    detail = format!("member {i} has a different root set");
                    break;
                }
            }
        }
        report.push("fixed-root-sets", ok, detail);
    }

    if let Some(mr) = &r.matroid {
        let caps = Caps::default();
        let prof = profile.clone();
        let witness = mr.oracle.independent_with_profile(&mr.roots, &prof, &caps)?;
        let mut ok = witness.is_some();
        let mut detail = if ok {
            "root multiset extends to an independent set".to_string()
        } else {
            "no independent set realizes the root profile".to_string()
        };
        if ok && mr.basis {
            let total: u32 = prof.iter().sum();
            if total != mr.oracle.full_rank() {
                ok = false;
                detail = format!(
                    "root count {total} differs from matroid rank {}",
                    mr.oracle.full_rank()
                );
            }
        }
        report.push(if mr.basis { "basis-rooted" } else { "independent-rooted" }, ok, detail);
    }

    if r.must_use != 0 {
        let nh = g.hyperedges().len();
        let mut used: u64 = 0;
        for m in &w.members {
            for &(i, _) in &m.hyperedges {
                used |= 1u64 << i;
            }
            for &(i, _) in &m.dyperedges {
                used |= 1u64 << (nh + i);
            }
        }
        let ok = r.must_use & !used == 0;
        report.push(
            "contains-required-edges",
            ok,
            if ok {
                "all required edges are in the packing".to_string()
            } else {
                "a required edge is missing from the packing".to_string()
            },
        );
    }

    Ok(report)
}

/// Branching check where hyperedge-derived arcs still need their tail chosen
/// (marked `usize::MAX`) while dyperedge trims are fixed.
fn oriented_member_is_branching(
    arcs: &[(VertSet, usize)],
    choice: &[usize],
    s: VertSet,
    u: VertSet,
) -> bool {
    let free: Vec<usize> = choice
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == usize::MAX)
        .map(|(i, _)| i)
        .collect();
    let mut work = choice.to_vec();
    fn rec(arcs: &[(VertSet, usize)], work: &mut [usize], free: &[usize], s: VertSet, u: VertSet) -> bool {
        match free.split_first() {
            None => is_branching(arcs, work, s, u),
            Some((&i, rest)) => {
                let tails = arcs[i].0;
                for y in bits(tails) {
                    work[i] = y;
                    if rec(arcs, work, rest, s, u) {
                        return true;
                    }
                }
                work[i] = usize::MAX;
                false
            }
        }
    }
    rec(arcs, &mut work, &free, s, u)
}

/// Convenience: build the dyperedge list of a member for trim search.
pub fn member_dyperedges(g: &MixedHypergraph, indices: &[usize]) -> Vec<(VertSet, usize)> {
    indices
        .iter()
        .map(|&i| {
            let d: &Dyperedge = &g.dyperedges()[i];
            (d.tails, d.head)
        })
        .collect()
}
