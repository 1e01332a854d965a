//! Feasibility checkers. Each packing or augmentation variant is decided by
//! evaluating its min–max condition system; infeasibility comes with a
//! machine-checkable certificate naming the violated inequality and the sets
//! achieving it. Every condition is normalized to "lhs >= rhs required", so a
//! certificate always satisfies lhs < rhs.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hypercore::{bits, card, for_each_subpartition_capped, MixedHypergraph, VertSet};
use crate::matroids::{MatroidOracle, RootMultiset};
use crate::oracles::{e_profile, BorderKind};

/// A violated inequality: its stable id, the integer values of both sides
/// (required lhs >= rhs, stored lhs < rhs), and the quantified sets that
/// achieve the violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub condition: String,
    pub lhs: i64,
    pub rhs: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
}

impl Certificate {
    fn new(condition: &str, lhs: i64, rhs: i64) -> Self {
        Certificate {
            condition: condition.to_string(),
            lhs,
            rhs,
            x: None,
            z: None,
            blocks: None,
        }
    }

    fn with_x(mut self, x: VertSet) -> Self {
        self.x = Some(set_vec(x));
        self
    }

    fn with_z(mut self, z: VertSet) -> Self {
        self.z = Some(set_vec(z));
        self
    }

    fn with_blocks(mut self, blocks: &[VertSet]) -> Self {
        self.blocks = Some(blocks.iter().map(|&b| set_vec(b)).collect());
        self
    }

    pub fn x_set(&self) -> VertSet {
        self.x.as_deref().map_or(0, vec_set)
    }

    pub fn z_set(&self) -> VertSet {
        self.z.as_deref().map_or(0, vec_set)
    }

    pub fn block_sets(&self) -> Vec<VertSet> {
        self.blocks
            .as_deref()
            .map_or_else(Vec::new, |bs| bs.iter().map(|b| vec_set(b)).collect())
    }
}

pub fn set_vec(s: VertSet) -> Vec<usize> {
    bits(s).collect()
}

pub fn vec_set(v: &[usize]) -> VertSet {
    v.iter().fold(0u64, |a, &i| a | (1u64 << i))
}

/// Sum of a per-vertex function over a vertex set.
pub(crate) fn msum(f: &[u32], s: VertSet) -> i64 {
    bits(s).map(|v| f[v] as i64).sum()
}

/// Sum of min(g(v), h) over a vertex set.
pub(crate) fn ghsum(g: &[u32], h: u32, s: VertSet) -> i64 {
    bits(s).map(|v| g[v].min(h) as i64).sum()
}

pub(crate) fn union_of(blocks: &[VertSet]) -> VertSet {
    blocks.iter().fold(0, |a, &b| a | b)
}

// ---------------------------------------------------------------------------
// Mixed-hyperarborescence augmentation (the general system)
// ---------------------------------------------------------------------------

/// Parameters of the general augmentation question: add an (f′,g′)-indegree-
/// bounded (q,q′)-size-limited arc set so an h-regular matroid-independent-
/// rooted (f,g)-bounded (α,β)-limited packing of mixed hyperarborescences
/// containing the new arcs exists.
#[derive(Debug, Clone)]
pub struct AugMixedParams {
    pub h: u32,
    pub f: Vec<u32>,
    pub g: Vec<u32>,
    pub fp: Vec<u32>,
    pub gp: Vec<u32>,
    pub q: u32,
    pub qp: u32,
    pub alpha: u32,
    pub beta: u32,
    pub roots: RootMultiset,
    pub matroid: MatroidOracle,
}

impl AugMixedParams {
    fn validate(&self, g: &MixedHypergraph) -> Result<()> {
        let n = g.n();
        if self.f.len() != n
            || self.g.len() != n
            || self.fp.len() != n
            || self.gp.len() != n
            || self.roots.n() != n
        {
            return Err(Error::input("per-vertex parameter length differs from n".to_string()));
        }
        if self.matroid.ground() != self.roots.total() as usize {
            return Err(Error::input(
                "matroid ground size differs from the root multiset size".to_string(),
            ));
        }
        Ok(())
    }

    /// b_M(X) = rank of the roots inside X.
    fn bm(&self, x: VertSet) -> i64 {
        self.matroid.rank_restricted(&self.roots, x) as i64
    }
}

/// Max-side term for one (X, Z): max{f(Z), max{h,α} − r(S_X̄) + f(Z−X) − g_h(X−Z)}.
pub fn aug_max_term(g: &MixedHypergraph, p: &AugMixedParams, x: VertSet, z: VertSet) -> i64 {
    let full = g.full();
    let ha = p.h.max(p.alpha) as i64;
    let t = ha - p.bm(full & !x) + msum(&p.f, z & !x) - ghsum(&p.g, p.h, x & !z);
    t.max(msum(&p.f, z))
}

/// Max-side inequality at (X, Z): h|Z| ≥ max{f′(Z), q−g′(Z̄)} + max-term.
pub fn eval_maxside(g: &MixedHypergraph, p: &AugMixedParams, x: VertSet, z: VertSet) -> (i64, i64) {
    let full = g.full();
    let p1 = msum(&p.fp, z).max(p.q as i64 - msum(&p.gp, full & !z));
    let lhs = p.h as i64 * card(z) as i64;
    (lhs, p1 + aug_max_term(g, p, x, z))
}

/// Min-side term for one (X, Z): min{β − f(Z̄), r(S_X) − f(X−Z) + g_h(Z−X)}.
pub fn aug_min_term(g: &MixedHypergraph, p: &AugMixedParams, x: VertSet, z: VertSet) -> i64 {
    let full = g.full();
    let t = p.bm(x) - msum(&p.f, x & !z) + ghsum(&p.g, p.h, z & !x);
    t.min(p.beta as i64 - msum(&p.f, full & !z))
}

/// Min-side inequality at (X, Z, P): e(P) + min{g′(Z), q′−f′(Z̄)} + min-term ≥ h|P|.
pub fn eval_minside(
    g: &MixedHypergraph,
    p: &AugMixedParams,
    x: VertSet,
    z: VertSet,
    blocks: &[VertSet],
) -> (i64, i64) {
    let full = g.full();
    let b1 = msum(&p.gp, z).min(p.qp as i64 - msum(&p.fp, full & !z));
    let lhs = g.border_count(blocks) as i64 + b1 + aug_min_term(g, p, x, z);
    (lhs, p.h as i64 * blocks.len() as i64)
}

/// Feasibility of the general augmentation system. `None` means feasible.
pub fn check_aug_mixed(
    g: &MixedHypergraph,
    p: &AugMixedParams,
    caps: &Caps,
) -> Result<Option<Certificate>> {
    p.validate(g)?;
    let n = g.n();
    let full = g.full();
    for v in 0..n {
        let gh = p.g[v].min(p.h) as i64;
        if gh < p.f[v] as i64 {
            return Ok(Some(Certificate::new("fg-le", gh, p.f[v] as i64).with_z(1u64 << v)));
        }
    }
    if (p.beta as i64) < p.alpha as i64 {
        return Ok(Some(Certificate::new("alpha-beta", p.beta as i64, p.alpha as i64)));
    }
    // every vertex lies in h members and each member has one root, so any
    // packing has at least h members; the arc budget cannot relax this
    if (p.beta as i64) < p.h as i64 {
        return Ok(Some(Certificate::new("h-beta", p.beta as i64, p.h as i64)));
    }
    for v in 0..n {
        if (p.gp[v] as i64) < p.fp[v] as i64 {
            return Ok(Some(
                Certificate::new("fp-gp", p.gp[v] as i64, p.fp[v] as i64).with_z(1u64 << v),
            ));
        }
    }
    if (p.qp as i64) < p.q as i64 {
        return Ok(Some(Certificate::new("q-qp", p.qp as i64, p.q as i64)));
    }
    // max side: the X-quantifier collapses to a per-Z maximum
    for z in 0..=full {
        if z & !full != 0 {
            continue;
        }
        let lhs = p.h as i64 * card(z) as i64;
        let p1 = msum(&p.fp, z).max(p.q as i64 - msum(&p.gp, full & !z));
        let worst = (0..=full)
            .filter(|x| x & !full == 0)
            .map(|x| aug_max_term(g, p, x, z))
            .max()
            .unwrap();
        if p1 + worst > lhs {
            let x = (0..=full)
                .filter(|x| x & !full == 0)
                .find(|&x| p1 + aug_max_term(g, p, x, z) > lhs)
                .unwrap();
            let (lhs, rhs) = eval_maxside(g, p, x, z);
            return Ok(Some(Certificate::new("maxside", lhs, rhs).with_x(x).with_z(z)));
        }
    }
    // min side: the P-quantifier collapses to p̂(Z), the X-quantifier to a
    // per-Z minimum
    for z in 0..=full {
        if z & !full != 0 {
            continue;
        }
        let b1 = msum(&p.gp, z).min(p.qp as i64 - msum(&p.fp, full & !z));
        let best = (0..=full)
            .filter(|x| x & !full == 0)
            .map(|x| aug_min_term(g, p, x, z))
            .min()
            .unwrap();
        let phat = g.p_hat(p.h, z, caps)?;
        if phat > b1 + best {
            // reconstruct the lexicographically first violating (X, P)
            for x in 0..=full {
                if x & !full != 0 {
                    continue;
                }
                let bound = b1 + aug_min_term(g, p, x, z);
                if phat <= bound {
                    continue;
                }
                if let Some(blocks) = first_violating_subpartition(g, p.h, z, bound, caps)? {
                    let (lhs, rhs) = eval_minside(g, p, x, z, &blocks);
                    return Ok(Some(
                        Certificate::new("minside", lhs, rhs)
                            .with_x(x)
                            .with_z(z)
                            .with_blocks(&blocks),
                    ));
                }
            }
            unreachable!("p̂ exceeded the bound but no subpartition achieved it");
        }
    }
    Ok(None)
}

/// First subpartition of `z` (in enumeration order) with h|P| − e(P) > bound.
fn first_violating_subpartition(
    g: &MixedHypergraph,
    h: u32,
    z: VertSet,
    bound: i64,
    caps: &Caps,
) -> Result<Option<Vec<VertSet>>> {
    let mut found: Option<Vec<VertSet>> = None;
    for_each_subpartition_capped(z, caps, &mut |blocks| {
        if found.is_some() {
            return;
        }
        let val = h as i64 * blocks.len() as i64 - g.border_count(blocks) as i64;
        if val > bound {
            found = Some(blocks.to_vec());
        }
    })?;
    Ok(found)
}

/// Parameters for the pure packing question (no arcs added).
#[derive(Debug, Clone)]
pub struct PackingMixedParams {
    pub h: u32,
    pub f: Vec<u32>,
    pub g: Vec<u32>,
    pub alpha: u32,
    pub beta: u32,
    pub roots: RootMultiset,
    pub matroid: MatroidOracle,
}

impl PackingMixedParams {
    /// The packing question is the augmentation question with a zero arc
    /// budget and zero in-degree bounds.
    pub fn to_aug(&self, n: usize) -> AugMixedParams {
        AugMixedParams {
            h: self.h,
            f: self.f.clone(),
            g: self.g.clone(),
            fp: vec![0; n],
            gp: vec![0; n],
            q: 0,
            qp: 0,
            alpha: self.alpha,
            beta: self.beta,
            roots: self.roots.clone(),
            matroid: self.matroid.clone(),
        }
    }
}

pub fn check_packing_mixed(
    g: &MixedHypergraph,
    p: &PackingMixedParams,
    caps: &Caps,
) -> Result<Option<Certificate>> {
    check_aug_mixed(g, &p.to_aug(g.n()), caps)
}

// ---------------------------------------------------------------------------
// Bordered packings of k hyperbranchings / rooted hyperforests
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct BorderedParams {
    pub h: u32,
    pub k: usize,
    pub alpha: u32,
    pub beta: u32,
    pub ell: Vec<u32>,
    pub ellp: Vec<u32>,
}

impl BorderedParams {
    pub fn ell_total(&self) -> i64 {
        self.ell.iter().map(|&x| x as i64).sum()
    }

    pub fn ellp_total(&self) -> i64 {
        self.ellp.iter().map(|&x| x as i64).sum()
    }

    /// Standing hypotheses of the condition system; violating them is a malformed
    /// question, not an infeasible one.
    fn validate(&self, n: usize) -> Result<()> {
        if self.ell.len() != self.k || self.ellp.len() != self.k {
            return Err(Error::input("border functions must have one entry per member".to_string()));
        }
        for i in 0..self.k {
            if !(n as u32 >= self.ellp[i] && self.ellp[i] >= self.ell[i]) {
                return Err(Error::input(format!(
                    "member {i}: need |V| >= ell'({i}) >= ell({i})"
                )));
            }
        }
        let (lo, hi) = (self.ell_total(), self.ellp_total());
        if !(hi >= self.beta as i64 && self.beta >= self.alpha && self.alpha as i64 >= lo) {
            return Err(Error::input(
                "need ell'(total) >= beta >= alpha >= ell(total)".to_string(),
            ));
        }
        Ok(())
    }
}

/// One bordered family inequality at block count `p` with border sum `e`:
/// `ell` variant is γ + β − Σℓ + Σmin{p,ℓ(i)} + e ≥ h·p; `ellp` variant is
/// γ + Σmin{p,ℓ′(i)} + e ≥ h·p. At p = 1 the minimum border is attained by
/// the single block V, which no added arc can enter, so the γ pad is dropped
/// there.
pub fn eval_bordered_family(
    params: &BorderedParams,
    gamma: u32,
    primed: bool,
    p: usize,
    e: i64,
) -> (i64, i64) {
    let pad = if p == 1 { 0 } else { gamma as i64 };
    let lhs = if primed {
        pad + params.ellp.iter().map(|&l| (p as i64).min(l as i64)).sum::<i64>() + e
    } else {
        pad + params.beta as i64 - params.ell_total()
            + params.ell.iter().map(|&l| (p as i64).min(l as i64)).sum::<i64>()
            + e
    };
    (lhs, params.h as i64 * p as i64)
}

fn check_bordered(
    g: &MixedHypergraph,
    params: &BorderedParams,
    gamma: u32,
    directed: bool,
    caps: &Caps,
) -> Result<Option<Certificate>> {
    params.validate(g.n())?;
    if directed {
        if !g.hyperedges().is_empty() {
            return Err(Error::input("directed bordered packing needs a dypergraph".to_string()));
        }
    } else if !g.dyperedges().is_empty() {
        return Err(Error::input("undirected bordered packing needs a hypergraph".to_string()));
    }
    let n = g.n();
    let h = params.h;
    if (h as i64) * (n as i64) < params.alpha as i64 {
        return Ok(Some(Certificate::new(
            "hV-alpha",
            h as i64 * n as i64,
            params.alpha as i64,
        )));
    }
    if (params.k as i64) < h as i64 {
        return Ok(Some(Certificate::new("k-ge-h", params.k as i64, h as i64)));
    }
    // every vertex lies in h members and each nonempty member keeps at least
    // one root, so at least h roots remain; added arcs cannot relax this
    if (params.beta as i64) < h as i64 {
        return Ok(Some(Certificate::new("h-beta", params.beta as i64, h as i64)));
    }
    let kind = if directed { BorderKind::Directed } else { BorderKind::Mixed };
    let prof = e_profile(g, kind, !directed, caps)?;
    for p in 1..=n {
        let e = prof[p] as i64;
        for &primed in &[false, true] {
            let (lhs, rhs) = eval_bordered_family(params, gamma, primed, p, e);
            if lhs < rhs {
                let blocks = first_min_border_family(g, kind, !directed, p, prof[p], caps)?;
                let id = if primed { "ellp-family" } else { "ell-family" };
                return Ok(Some(Certificate::new(id, lhs, rhs).with_blocks(&blocks)));
            }
        }
    }
    Ok(None)
}

/// First subpartition (or partition) with `p` blocks achieving border sum `e`.
fn first_min_border_family(
    g: &MixedHypergraph,
    kind: BorderKind,
    partitions_only: bool,
    p: usize,
    e: u64,
    caps: &Caps,
) -> Result<Vec<VertSet>> {
    let mut found: Option<Vec<VertSet>> = None;
    let mut visit = |blocks: &[VertSet]| {
        if found.is_some() || blocks.len() != p {
            return;
        }
        let val = match kind {
            BorderKind::Mixed => g.border_count(blocks),
            BorderKind::Directed => g.border_count_directed(blocks),
        } as u64;
        if val == e {
            found = Some(blocks.to_vec());
        }
    };
    if partitions_only {
        crate::hypercore::for_each_partition(g.full(), &mut visit);
    } else {
        for_each_subpartition_capped(g.full(), caps, &mut visit)?;
    }
    found.ok_or_else(|| Error::input("certificate reconstruction failed".to_string()))
}

/// Add at most γ arcs to a dypergraph so an h-regular (ℓ,ℓ′)-bordered
/// (α,β)-limited packing of k hyperbranchings exists.
pub fn check_bordered_dir(
    g: &MixedHypergraph,
    params: &BorderedParams,
    gamma: u32,
    caps: &Caps,
) -> Result<Option<Certificate>> {
    check_bordered(g, params, gamma, true, caps)
}

/// Undirected counterpart over rooted hyperforests; the family quantifier
/// ranges over partitions of V.
pub fn check_bordered_undir(
    g: &MixedHypergraph,
    params: &BorderedParams,
    gamma: u32,
    caps: &Caps,
) -> Result<Option<Certificate>> {
    check_bordered(g, params, gamma, false, caps)
}

// ---------------------------------------------------------------------------
// Root-set families
// ---------------------------------------------------------------------------

/// Spanning mixed hyperbranchings with prescribed root sets: for every
/// subpartition P, e(P) + Σ_{X∈P} |{i : S_i ∩ X ≠ ∅}| ≥ k|P|.
pub fn check_rootset_family(
    g: &MixedHypergraph,
    sets: &[VertSet],
    caps: &Caps,
) -> Result<Option<Certificate>> {
    for &s in sets {
        if s & !g.full() != 0 {
            return Err(Error::input("root set contains an out-of-range vertex".to_string()));
        }
    }
    let mut cert: Option<Certificate> = None;
    for_each_subpartition_capped(g.full(), caps, &mut |blocks| {
        if cert.is_some() {
            return;
        }
        let (lhs, rhs) = eval_rootset_family(g, sets, blocks);
        if lhs < rhs {
            cert = Some(Certificate::new("rootset-family", lhs, rhs).with_blocks(blocks));
        }
    })?;
    Ok(cert)
}

pub fn eval_rootset_family(
    g: &MixedHypergraph,
    sets: &[VertSet],
    blocks: &[VertSet],
) -> (i64, i64) {
    let k = sets.len() as i64;
    let hitting: i64 = blocks
        .iter()
        .map(|&b| sets.iter().filter(|&&s| s & b != 0).count() as i64)
        .sum();
    (
        g.border_count(blocks) as i64 + hitting,
        k * blocks.len() as i64,
    )
}

// ---------------------------------------------------------------------------
// Classic variants
// ---------------------------------------------------------------------------

/// The classical packing and augmentation variants this crate re-checks.
#[derive(Debug, Clone)]
pub enum ClassicVariant {
    /// k spanning (hyper)arborescences with a fixed root multiset; needs a
    /// dypergraph.
    FixedRoots { roots: RootMultiset },
    /// k spanning mixed (hyper)arborescences with free roots.
    Flexible { k: u32 },
    /// (f,g)-bounded k spanning mixed (hyper)arborescences.
    FgBounded { k: u32, f: Vec<u32>, g: Vec<u32> },
    /// h-regular (f,g)-bounded (α,β)-limited arborescences; needs a digraph.
    HRegularLimited { h: u32, f: Vec<u32>, g: Vec<u32>, alpha: u32, beta: u32 },
    /// Mixed-hypergraph version of the above (the family term uses g_h).
    MixedLimited { h: u32, f: Vec<u32>, g: Vec<u32>, alpha: u32, beta: u32 },
    /// h-regular basis-rooted (f,g)-bounded mixed hyperarborescences.
    MatroidBasisRooted { h: u32, f: Vec<u32>, g: Vec<u32>, roots: RootMultiset, matroid: MatroidOracle },
    /// k spanning branchings with fixed root sets; needs a digraph.
    RootSetBranchings { sets: Vec<VertSet> },
    /// (ℓ,ℓ′)-bordered (α,β)-limited k spanning branchings; needs a digraph.
    BorderedBranchings { k: usize, alpha: u32, beta: u32, ell: Vec<u32>, ellp: Vec<u32> },
    /// Add γ arcs for k spanning arborescences with fixed roots; digraph.
    FixedRootsAug { roots: RootMultiset, gamma: u32 },
    /// Add γ arcs for k spanning arborescences with free roots; digraph.
    FlexibleAug { k: u32, gamma: u32 },
}

fn require_dypergraph(g: &MixedHypergraph) -> Result<()> {
    if !g.hyperedges().is_empty() {
        return Err(Error::input("this variant needs a dypergraph (no hyperedges)".to_string()));
    }
    Ok(())
}

fn require_digraph(g: &MixedHypergraph) -> Result<()> {
    require_dypergraph(g)?;
    if g.dyperedges().iter().any(|d| !d.is_arc()) {
        return Err(Error::input("this variant needs a digraph (arcs only)".to_string()));
    }
    Ok(())
}

fn check_vertex_fn(g: &MixedHypergraph, f: &[u32]) -> Result<()> {
    if f.len() != g.n() {
        return Err(Error::input("per-vertex parameter length differs from n".to_string()));
    }
    Ok(())
}

pub fn check_classic(
    g: &MixedHypergraph,
    variant: &ClassicVariant,
    caps: &Caps,
) -> Result<Option<Certificate>> {
    match variant {
        ClassicVariant::FixedRoots { roots } => {
            require_dypergraph(g)?;
            if roots.n() != g.n() {
                return Err(Error::input("root multiset size differs from n".to_string()));
            }
            let k = roots.total() as i64;
            for x in 1..=g.full() {
                if x & !g.full() != 0 {
                    continue;
                }
                let lhs = roots.restricted_size(x) as i64 + g.in_degree(x)? as i64;
                if lhs < k {
                    return Ok(Some(Certificate::new("indeg-rootcount", lhs, k).with_x(x)));
                }
            }
            Ok(None)
        }
        ClassicVariant::Flexible { k } => {
            scan_subpartitions(g, caps, "flex-family", |blocks| {
                (
                    g.border_count(blocks) as i64 + *k as i64,
                    *k as i64 * blocks.len() as i64,
                )
            })
        }
        ClassicVariant::FgBounded { k, f, g: gb } => {
            check_vertex_fn(g, f)?;
            check_vertex_fn(g, gb)?;
            for v in 0..g.n() {
                if gb[v] < f[v] {
                    return Ok(Some(
                        Certificate::new("fg-le", gb[v] as i64, f[v] as i64).with_z(1u64 << v),
                    ));
                }
            }
            let full = g.full();
            scan_subpartitions(g, caps, "fg-family", |blocks| {
                let u = union_of(blocks);
                let cap = (*k as i64 - msum(f, full & !u)).min(msum(gb, u));
                (
                    g.border_count(blocks) as i64 + cap,
                    *k as i64 * blocks.len() as i64,
                )
            })
        }
        ClassicVariant::HRegularLimited { h, f, g: gb, alpha, beta } => {
            require_digraph(g)?;
            check_limited(g, *h, f, gb, *alpha, *beta, false, caps)
        }
        ClassicVariant::MixedLimited { h, f, g: gb, alpha, beta } => {
            check_limited(g, *h, f, gb, *alpha, *beta, true, caps)
        }
        ClassicVariant::MatroidBasisRooted { h, f, g: gb, roots, matroid } => {
            check_basis_rooted(g, *h, f, gb, roots, matroid, caps)
        }
        ClassicVariant::RootSetBranchings { sets } => {
            require_digraph(g)?;
            let k = sets.len() as i64;
            for x in 1..=g.full() {
                if x & !g.full() != 0 {
                    continue;
                }
                let hit = sets.iter().filter(|&&s| s & x != 0).count() as i64;
                let lhs = hit + g.in_degree(x)? as i64;
                if lhs < k {
                    return Ok(Some(Certificate::new("rootset-indeg", lhs, k).with_x(x)));
                }
            }
            Ok(None)
        }
        ClassicVariant::BorderedBranchings { k, alpha, beta, ell, ellp } => {
            require_digraph(g)?;
            let params = BorderedParams {
                h: *k as u32,
                k: *k,
                alpha: *alpha,
                beta: *beta,
                ell: ell.clone(),
                ellp: ellp.clone(),
            };
            check_bordered_dir(g, &params, 0, caps)
        }
        ClassicVariant::FixedRootsAug { roots, gamma } => {
            require_digraph(g)?;
            if roots.n() != g.n() {
                return Err(Error::input("root multiset size differs from n".to_string()));
            }
            let k = roots.total() as i64;
            scan_subpartitions(g, caps, "aug-rootcount-family", |blocks| {
                let hit: i64 = blocks.iter().map(|&b| roots.restricted_size(b) as i64).sum();
                (
                    *gamma as i64 + g.border_count(blocks) as i64 + hit,
                    k * blocks.len() as i64,
                )
            })
        }
        ClassicVariant::FlexibleAug { k, gamma } => {
            require_digraph(g)?;
            scan_subpartitions(g, caps, "aug-flex-family", |blocks| {
                (
                    *gamma as i64 + g.border_count(blocks) as i64 + *k as i64,
                    *k as i64 * blocks.len() as i64,
                )
            })
        }
    }
}

/// Scan all subpartitions of V, returning the first violated instance of a
/// per-subpartition inequality.
fn scan_subpartitions(
    g: &MixedHypergraph,
    caps: &Caps,
    id: &str,
    eval: impl Fn(&[VertSet]) -> (i64, i64),
) -> Result<Option<Certificate>> {
    let mut cert: Option<Certificate> = None;
    for_each_subpartition_capped(g.full(), caps, &mut |blocks| {
        if cert.is_some() {
            return;
        }
        let (lhs, rhs) = eval(blocks);
        if lhs < rhs {
            cert = Some(Certificate::new(id, lhs, rhs).with_blocks(blocks));
        }
    })?;
    Ok(cert)
}

/// Shared body of the (α,β)-limited variants. The digraph version's family
/// term uses g(∪P); the mixed-hypergraph version uses g_h(∪P).
fn check_limited(
    g: &MixedHypergraph,
    h: u32,
    f: &[u32],
    gb: &[u32],
    alpha: u32,
    beta: u32,
    truncate_g: bool,
    caps: &Caps,
) -> Result<Option<Certificate>> {
    check_vertex_fn(g, f)?;
    check_vertex_fn(g, gb)?;
    for v in 0..g.n() {
        let gh = gb[v].min(h) as i64;
        if gh < f[v] as i64 {
            return Ok(Some(Certificate::new("fg-le", gh, f[v] as i64).with_z(1u64 << v)));
        }
    }
    let full = g.full();
    let cap_total = (beta as i64).min(ghsum(gb, h, full));
    if cap_total < alpha as i64 {
        return Ok(Some(Certificate::new("alpha-cap", cap_total, alpha as i64)));
    }
    let id = if truncate_g { "limited-family" } else { "bf-family" };
    scan_subpartitions(g, caps, id, |blocks| {
        let u = union_of(blocks);
        let gu = if truncate_g { ghsum(gb, h, u) } else { msum(gb, u) };
        let cap = (beta as i64 - msum(f, full & !u)).min(gu);
        (
            g.border_count(blocks) as i64 + cap,
            h as i64 * blocks.len() as i64,
        )
    })
}

/// h-regular basis-rooted (f,g)-bounded mixed hyperarborescences: g_h ≥ f,
/// r(S_X) + g_h(X̄) ≥ r(S) for all X, and for all U, W and subpartitions P of
/// W: e(P) + r(S_U) − f(U−W) + g_h(W−U) ≥ h|P|.
fn check_basis_rooted(
    g: &MixedHypergraph,
    h: u32,
    f: &[u32],
    gb: &[u32],
    roots: &RootMultiset,
    matroid: &MatroidOracle,
    caps: &Caps,
) -> Result<Option<Certificate>> {
    check_vertex_fn(g, f)?;
    check_vertex_fn(g, gb)?;
    if roots.n() != g.n() || matroid.ground() != roots.total() as usize {
        return Err(Error::input("matroid/root multiset shape mismatch".to_string()));
    }
    let full = g.full();
    for v in 0..g.n() {
        let gh = gb[v].min(h) as i64;
        if gh < f[v] as i64 {
            return Ok(Some(Certificate::new("fg-le", gh, f[v] as i64).with_z(1u64 << v)));
        }
    }
    let rk = matroid.full_rank() as i64;
    for x in 0..=full {
        if x & !full != 0 {
            continue;
        }
        let lhs = matroid.rank_restricted(roots, x) as i64 + ghsum(gb, h, full & !x);
        if lhs < rk {
            return Ok(Some(Certificate::new("basis-span", lhs, rk).with_x(x)));
        }
    }
    for w in 0..=full {
        if w & !full != 0 {
            continue;
        }
        let best = (0..=full)
            .filter(|u| u & !full == 0)
            .map(|u| basis_term(g, h, f, gb, roots, matroid, u, w))
            .min()
            .unwrap();
        let phat = g.p_hat(h, w, caps)?;
        if phat > best {
            for u in 0..=full {
                if u & !full != 0 {
                    continue;
                }
                let bound = basis_term(g, h, f, gb, roots, matroid, u, w);
                if phat <= bound {
                    continue;
                }
                if let Some(blocks) = first_violating_subpartition(g, h, w, bound, caps)? {
                    let lhs = g.border_count(&blocks) as i64 + bound;
                    let rhs = h as i64 * blocks.len() as i64;
                    return Ok(Some(
                        Certificate::new("basis-family", lhs, rhs)
                            .with_x(u)
                            .with_z(w)
                            .with_blocks(&blocks),
                    ));
                }
            }
            unreachable!("p̂ exceeded the bound but no subpartition achieved it");
        }
    }
    Ok(None)
}

/// r(S_U) − f(U−W) + g_h(W−U), the basis-rooted family term.
pub fn basis_term(
    _g: &MixedHypergraph,
    h: u32,
    f: &[u32],
    gb: &[u32],
    roots: &RootMultiset,
    matroid: &MatroidOracle,
    u: VertSet,
    w: VertSet,
) -> i64 {
    matroid.rank_restricted(roots, u) as i64 - msum(f, u & !w) + ghsum(gb, h, w & !u)
}
