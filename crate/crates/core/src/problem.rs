//! Problem descriptions: a kind tag plus that kind's parameters, parsed from
//! JSON and dispatched to the matching checker, solver, brute-force oracle
//! requirements, and certificate re-evaluation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::augment::{min_gamma, solve_aug_mixed, solve_bordered, Feasibility};
use crate::caps::Caps;
use crate::conditions::{
    basis_term, check_aug_mixed, check_bordered_dir, check_bordered_undir, check_classic,
    check_packing_mixed, check_rootset_family, eval_bordered_family, eval_maxside, eval_minside,
    eval_rootset_family, ghsum, msum, union_of, vec_set, AugMixedParams, BorderedParams,
    Certificate, ClassicVariant, PackingMixedParams,
};
use crate::error::{Error, Result};
use crate::hypercore::MixedHypergraph;
use crate::matroids::{roots_from_json, MatroidJson, RootMultiset};
use crate::oracles::{exists_packing_bf, min_augment_bf, AugmentMode};
use crate::verify::{MatroidRequirement, PackingWitness, Requirements};

/// A problem file. Instances are kept separate; a problem never embeds a
/// graph. Root multisets are maps vertex → multiplicity; root sets are vertex
/// lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Problem {
    /// k spanning (hyper)arborescences with a fixed root multiset.
    FixedRoots { roots: BTreeMap<String, u32> },
    /// k spanning mixed (hyper)arborescences with free roots.
    Flexible { k: u32 },
    /// (f,g)-bounded k spanning mixed (hyper)arborescences.
    FgBounded { k: u32, f: Vec<u32>, g: Vec<u32> },
    /// h-regular (f,g)-bounded (α,β)-limited arborescences on a digraph.
    HRegularLimited { h: u32, f: Vec<u32>, g: Vec<u32>, alpha: u32, beta: u32 },
    /// Mixed-hypergraph version of the above.
    MixedLimited { h: u32, f: Vec<u32>, g: Vec<u32>, alpha: u32, beta: u32 },
    /// h-regular basis-rooted (f,g)-bounded mixed hyperarborescences.
    MatroidBasisRooted {
        h: u32,
        f: Vec<u32>,
        g: Vec<u32>,
        roots: BTreeMap<String, u32>,
        matroid: MatroidJson,
    },
    /// k spanning branchings with fixed root sets on a digraph.
    RootSetBranchings { sets: Vec<Vec<usize>> },
    /// (ℓ,ℓ′)-bordered (α,β)-limited k spanning branchings on a digraph.
    BorderedBranchings { k: usize, alpha: u32, beta: u32, ell: Vec<u32>, ellp: Vec<u32> },
    /// Add γ arcs for k spanning arborescences with fixed roots.
    FixedRootsAug { roots: BTreeMap<String, u32>, gamma: u32 },
    /// Add γ arcs for k spanning arborescences with free roots.
    FlexibleAug { k: u32, gamma: u32 },
    /// h-regular matroid-independent-rooted (f,g)-bounded (α,β)-limited
    /// packing of mixed hyperarborescences.
    PackingMixed {
        h: u32,
        f: Vec<u32>,
        g: Vec<u32>,
        alpha: u32,
        beta: u32,
        roots: BTreeMap<String, u32>,
        matroid: MatroidJson,
    },
    /// The general augmentation: add an (f′,g′)-indegree-bounded
    /// (q,q′)-size-limited arc set so the packing above exists.
    AugMixed {
        h: u32,
        f: Vec<u32>,
        g: Vec<u32>,
        fp: Vec<u32>,
        gp: Vec<u32>,
        q: u32,
        qp: u32,
        alpha: u32,
        beta: u32,
        roots: BTreeMap<String, u32>,
        matroid: MatroidJson,
    },
    /// Add at most γ arcs for an h-regular (ℓ,ℓ′)-bordered (α,β)-limited
    /// packing of k hyperbranchings.
    BorderedDir { h: u32, k: usize, alpha: u32, beta: u32, ell: Vec<u32>, ellp: Vec<u32>, gamma: u32 },
    /// Undirected counterpart over rooted hyperforests.
    BorderedUndir { h: u32, k: usize, alpha: u32, beta: u32, ell: Vec<u32>, ellp: Vec<u32>, gamma: u32 },
    /// k spanning mixed hyperbranchings with prescribed root sets.
    RootsetFamily { sets: Vec<Vec<usize>> },
}

/// Output of [`Problem::solve`]: whatever was added plus a packing witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveOutput {
    pub added_arcs: Vec<(usize, usize)>,
    pub added_edges: Vec<(usize, usize)>,
    pub witness: PackingWitness,
}

impl Problem {
    fn aug_params(&self, n: usize, caps: &Caps) -> Result<AugMixedParams> {
        match self {
            Problem::AugMixed { h, f, g, fp, gp, q, qp, alpha, beta, roots, matroid } => {
                let roots = roots_from_json(roots, n)?;
                let matroid = matroid.to_oracle(roots.total() as usize, caps)?;
                Ok(AugMixedParams {
                    h: *h,
                    f: f.clone(),
                    g: g.clone(),
                    fp: fp.clone(),
                    gp: gp.clone(),
                    q: *q,
                    qp: *qp,
                    alpha: *alpha,
                    beta: *beta,
                    roots,
                    matroid,
                })
            }
            _ => Err(Error::input("not a general-augmentation problem".to_string())),
        }
    }

    fn packing_params(&self, n: usize, caps: &Caps) -> Result<PackingMixedParams> {
        match self {
            Problem::PackingMixed { h, f, g, alpha, beta, roots, matroid } => {
                let roots = roots_from_json(roots, n)?;
                let matroid = matroid.to_oracle(roots.total() as usize, caps)?;
                Ok(PackingMixedParams {
                    h: *h,
                    f: f.clone(),
                    g: g.clone(),
                    alpha: *alpha,
                    beta: *beta,
                    roots,
                    matroid,
                })
            }
            _ => Err(Error::input("not a mixed-packing problem".to_string())),
        }
    }

    fn bordered_params(&self) -> Result<(BorderedParams, u32, bool)> {
        match self {
            Problem::BorderedDir { h, k, alpha, beta, ell, ellp, gamma } => Ok((
                BorderedParams { h: *h, k: *k, alpha: *alpha, beta: *beta, ell: ell.clone(), ellp: ellp.clone() },
                *gamma,
                true,
            )),
            Problem::BorderedUndir { h, k, alpha, beta, ell, ellp, gamma } => Ok((
                BorderedParams { h: *h, k: *k, alpha: *alpha, beta: *beta, ell: ell.clone(), ellp: ellp.clone() },
                *gamma,
                false,
            )),
            _ => Err(Error::input("not a bordered problem".to_string())),
        }
    }

    fn classic_variant(&self, n: usize, caps: &Caps) -> Result<ClassicVariant> {
        Ok(match self {
            Problem::FixedRoots { roots } => {
                ClassicVariant::FixedRoots { roots: roots_from_json(roots, n)? }
            }
            Problem::Flexible { k } => ClassicVariant::Flexible { k: *k },
            Problem::FgBounded { k, f, g } => {
                ClassicVariant::FgBounded { k: *k, f: f.clone(), g: g.clone() }
            }
            Problem::HRegularLimited { h, f, g, alpha, beta } => ClassicVariant::HRegularLimited {
                h: *h,
                f: f.clone(),
                g: g.clone(),
                alpha: *alpha,
                beta: *beta,
            },
            Problem::MixedLimited { h, f, g, alpha, beta } => ClassicVariant::MixedLimited {
                h: *h,
                f: f.clone(),
                g: g.clone(),
                alpha: *alpha,
                beta: *beta,
            },
            Problem::MatroidBasisRooted { h, f, g, roots, matroid } => {
                let roots = roots_from_json(roots, n)?;
                let matroid = matroid.to_oracle(roots.total() as usize, caps)?;
                ClassicVariant::MatroidBasisRooted {
                    h: *h,
                    f: f.clone(),
                    g: g.clone(),
                    roots,
                    matroid,
                }
            }
            Problem::RootSetBranchings { sets } => {
                ClassicVariant::RootSetBranchings { sets: sets_from_json(sets, n)? }
            }
            Problem::BorderedBranchings { k, alpha, beta, ell, ellp } => {
                ClassicVariant::BorderedBranchings {
                    k: *k,
                    alpha: *alpha,
                    beta: *beta,
                    ell: ell.clone(),
                    ellp: ellp.clone(),
                }
            }
            Problem::FixedRootsAug { roots, gamma } => {
                ClassicVariant::FixedRootsAug { roots: roots_from_json(roots, n)?, gamma: *gamma }
            }
            Problem::FlexibleAug { k, gamma } => {
                ClassicVariant::FlexibleAug { k: *k, gamma: *gamma }
            }
            _ => return Err(Error::input("not a classic variant".to_string())),
        })
    }

    /// Feasibility verdict; `None` means feasible.
    pub fn check(&self, g: &MixedHypergraph, caps: &Caps) -> Result<Option<Certificate>> {
        let n = g.n();
        match self {
            Problem::AugMixed { .. } => check_aug_mixed(g, &self.aug_params(n, caps)?, caps),
            Problem::PackingMixed { .. } => {
                check_packing_mixed(g, &self.packing_params(n, caps)?, caps)
            }
            Problem::BorderedDir { .. } | Problem::BorderedUndir { .. } => {
                let (params, gamma, directed) = self.bordered_params()?;
                if directed {
                    check_bordered_dir(g, &params, gamma, caps)
                } else {
                    check_bordered_undir(g, &params, gamma, caps)
                }
            }
            Problem::RootsetFamily { sets } => {
                check_rootset_family(g, &sets_from_json(sets, n)?, caps)
            }
            _ => check_classic(g, &self.classic_variant(n, caps)?, caps),
        }
    }

    /// The γ budget of an augmentation problem, if this kind has one.
    pub fn gamma(&self) -> Option<u32> {
        match self {
            Problem::FixedRootsAug { gamma, .. }
            | Problem::FlexibleAug { gamma, .. }
            | Problem::BorderedDir { gamma, .. }
            | Problem::BorderedUndir { gamma, .. } => Some(*gamma),
            _ => None,
        }
    }

    /// Override the γ budget. Errors on kinds without one.
    pub fn set_gamma(&mut self, new_gamma: u32) -> Result<()> {
        match self {
            Problem::FixedRootsAug { gamma, .. }
            | Problem::FlexibleAug { gamma, .. }
            | Problem::BorderedDir { gamma, .. }
            | Problem::BorderedUndir { gamma, .. } => {
                *gamma = new_gamma;
                Ok(())
            }
            _ => Err(Error::input("this problem kind has no gamma budget".to_string())),
        }
    }

    /// Least feasible γ up to `gamma_max` for a γ-parameterized kind.
    pub fn min_gamma(
        &self,
        g: &MixedHypergraph,
        gamma_max: u32,
        caps: &Caps,
    ) -> Result<Option<u32>> {
        if self.gamma().is_none() {
            return Err(Error::input("this problem kind has no gamma budget".to_string()));
        }
        let mut p = self.clone();
        min_gamma(
            move |gamma| {
                p.set_gamma(gamma)?;
                Ok(p.check(g, caps)?.is_none())
            },
            gamma_max,
        )
    }

    /// What a packing witness for this problem must satisfy; drives both the
    /// brute-force oracle and witness verification.
    pub fn requirements(&self, g: &MixedHypergraph, caps: &Caps) -> Result<Requirements> {
        let n = g.n();
        Ok(match self {
            Problem::FixedRoots { roots } => {
                let roots = roots_from_json(roots, n)?;
                Requirements {
                    k: Some(roots.total() as usize),
                    spanning: true,
                    single_root: true,
                    fixed_roots: Some(roots),
                    ..Default::default()
                }
            }
            Problem::Flexible { k } | Problem::FlexibleAug { k, .. } => Requirements {
                k: Some(*k as usize),
                spanning: true,
                single_root: true,
                ..Default::default()
            },
            Problem::FixedRootsAug { roots, .. } => {
                let roots = roots_from_json(roots, n)?;
                Requirements {
                    k: Some(roots.total() as usize),
                    spanning: true,
                    single_root: true,
                    fixed_roots: Some(roots),
                    ..Default::default()
                }
            }
            Problem::FgBounded { k, f, g: gb } => Requirements {
                k: Some(*k as usize),
                spanning: true,
                single_root: true,
                f: Some(f.clone()),
                g: Some(gb.clone()),
                ..Default::default()
            },
            Problem::HRegularLimited { h, f, g: gb, alpha, beta }
            | Problem::MixedLimited { h, f, g: gb, alpha, beta } => Requirements {
                h: Some(*h),
                single_root: true,
                f: Some(f.clone()),
                g: Some(gb.clone()),
                alpha_beta: Some((*alpha, *beta)),
                ..Default::default()
            },
            Problem::MatroidBasisRooted { h, f, g: gb, roots, matroid } => {
                let roots = roots_from_json(roots, n)?;
                let oracle = matroid.to_oracle(roots.total() as usize, caps)?;
                Requirements {
                    h: Some(*h),
                    single_root: true,
                    f: Some(f.clone()),
                    g: Some(gb.clone()),
                    matroid: Some(MatroidRequirement { roots, oracle, basis: true }),
                    ..Default::default()
                }
            }
            Problem::PackingMixed { .. } | Problem::AugMixed { .. } => {
                let (h, f, gb, alpha, beta, roots, matroid) = match self {
                    Problem::PackingMixed { h, f, g, alpha, beta, roots, matroid }
                    | Problem::AugMixed { h, f, g, alpha, beta, roots, matroid, .. } => {
                        (*h, f.clone(), g.clone(), *alpha, *beta, roots, matroid)
                    }
                    _ => unreachable!(),
                };
                let roots = roots_from_json(roots, n)?;
                let oracle = matroid.to_oracle(roots.total() as usize, caps)?;
                Requirements {
                    h: Some(h),
                    single_root: true,
                    f: Some(f),
                    g: Some(gb),
                    alpha_beta: Some((alpha, beta)),
                    matroid: Some(MatroidRequirement { roots, oracle, basis: false }),
                    ..Default::default()
                }
            }
            Problem::RootSetBranchings { sets } | Problem::RootsetFamily { sets } => Requirements {
                k: Some(sets.len()),
                spanning: true,
                fixed_root_sets: Some(sets_from_json(sets, n)?),
                ..Default::default()
            },
            Problem::BorderedBranchings { k, alpha, beta, ell, ellp } => Requirements {
                k: Some(*k),
                spanning: true,
                ell: Some(ell.clone()),
                ell_prime: Some(ellp.clone()),
                alpha_beta: Some((*alpha, *beta)),
                ..Default::default()
            },
            Problem::BorderedDir { h, k, alpha, beta, ell, ellp, .. } => Requirements {
                k: Some(*k),
                h: Some(*h),
                ell: Some(ell.clone()),
                ell_prime: Some(ellp.clone()),
                alpha_beta: Some((*alpha, *beta)),
                ..Default::default()
            },
            Problem::BorderedUndir { h, k, alpha, beta, ell, ellp, .. } => Requirements {
                k: Some(*k),
                h: Some(*h),
                ell: Some(ell.clone()),
                ell_prime: Some(ellp.clone()),
                alpha_beta: Some((*alpha, *beta)),
                hyperforest: true,
                ..Default::default()
            },
        })
    }

    /// Construct a solution: additions (if the kind augments) plus a packing
    /// witness.
    pub fn solve(&self, g: &MixedHypergraph, caps: &Caps) -> Result<Feasibility<SolveOutput>> {
        let n = g.n();
        match self {
            Problem::AugMixed { .. } => {
                match solve_aug_mixed(g, &self.aug_params(n, caps)?, caps)? {
                    Feasibility::Feasible((arcs, witness)) => {
                        Ok(Feasibility::Feasible(SolveOutput {
                            added_arcs: arcs,
                            added_edges: Vec::new(),
                            witness,
                        }))
                    }
                    Feasibility::Infeasible(c) => Ok(Feasibility::Infeasible(c)),
                }
            }
            Problem::BorderedDir { .. } | Problem::BorderedUndir { .. } => {
                let (params, gamma, directed) = self.bordered_params()?;
                match solve_bordered(g, &params, gamma, directed, caps)? {
                    Feasibility::Feasible((added, witness)) => {
                        let (added_arcs, added_edges) =
                            if directed { (added, Vec::new()) } else { (Vec::new(), added) };
                        Ok(Feasibility::Feasible(SolveOutput { added_arcs, added_edges, witness }))
                    }
                    Feasibility::Infeasible(c) => Ok(Feasibility::Infeasible(c)),
                }
            }
            Problem::FixedRootsAug { gamma, .. } | Problem::FlexibleAug { gamma, .. } => {
                if let Some(c) = self.check(g, caps)? {
                    return Ok(Feasibility::Infeasible(c));
                }
                let req = self.requirements(g, caps)?;
                match min_augment_bf(g, &req, AugmentMode::Arcs, *gamma, caps)? {
                    Some((added, witness)) => Ok(Feasibility::Feasible(SolveOutput {
                        added_arcs: added,
                        added_edges: Vec::new(),
                        witness,
                    })),
                    None => Err(Error::input(
                        "internal inconsistency: feasible verdict but no augmentation found"
                            .to_string(),
                    )),
                }
            }
            _ => {
                if let Some(c) = self.check(g, caps)? {
                    return Ok(Feasibility::Infeasible(c));
                }
                let req = self.requirements(g, caps)?;
                match exists_packing_bf(g, &req, caps)? {
                    Some(witness) => Ok(Feasibility::Feasible(SolveOutput {
                        added_arcs: Vec::new(),
                        added_edges: Vec::new(),
                        witness,
                    })),
                    None => Err(Error::input(
                        "internal inconsistency: feasible verdict but no packing found".to_string(),
                    )),
                }
            }
        }
    }

    /// Recompute both sides of a certificate's inequality from its stored
    /// sets. The result must reproduce the stored values exactly.
    pub fn reevaluate(
        &self,
        g: &MixedHypergraph,
        cert: &Certificate,
        caps: &Caps,
    ) -> Result<(i64, i64)> {
        let n = g.n();
        let full = g.full();
        let x = cert.x_set();
        let z = cert.z_set();
        let blocks = cert.block_sets();
        let vertex_of_z = || -> Result<usize> {
            crate::hypercore::bits(z)
                .next()
                .ok_or_else(|| Error::input("certificate is missing its vertex".to_string()))
        };
        Ok(match (self, cert.condition.as_str()) {
            (Problem::AugMixed { .. } | Problem::PackingMixed { .. }, id) => {
                let p = match self {
                    Problem::AugMixed { .. } => self.aug_params(n, caps)?,
                    _ => self.packing_params(n, caps)?.to_aug(n),
                };
                match id {
                    "fg-le" => {
                        let v = vertex_of_z()?;
                        (p.g[v].min(p.h) as i64, p.f[v] as i64)
                    }
                    "alpha-beta" => (p.beta as i64, p.alpha as i64),
                    "h-beta" => (p.beta as i64, p.h as i64),
                    "fp-gp" => {
                        let v = vertex_of_z()?;
                        (p.gp[v] as i64, p.fp[v] as i64)
                    }
                    "q-qp" => (p.qp as i64, p.q as i64),
                    "maxside" => eval_maxside(g, &p, x, z),
                    "minside" => eval_minside(g, &p, x, z, &blocks),
                    other => return Err(unknown_condition(other)),
                }
            }
            (
                Problem::BorderedDir { .. }
                | Problem::BorderedUndir { .. }
                | Problem::BorderedBranchings { .. },
                id,
            ) => {
                let (params, gamma, directed) = match self {
                    Problem::BorderedBranchings { k, alpha, beta, ell, ellp } => (
                        BorderedParams {
                            h: *k as u32,
                            k: *k,
                            alpha: *alpha,
                            beta: *beta,
                            ell: ell.clone(),
                            ellp: ellp.clone(),
                        },
                        0,
                        true,
                    ),
                    _ => self.bordered_params()?,
                };
                match id {
                    "hV-alpha" => (params.h as i64 * n as i64, params.alpha as i64),
                    "k-ge-h" => (params.k as i64, params.h as i64),
                    "h-beta" => (params.beta as i64, params.h as i64),
                    "ell-family" | "ellp-family" => {
                        let e = if directed {
                            g.border_count_directed(&blocks) as i64
                        } else {
                            g.border_count(&blocks) as i64
                        };
                        eval_bordered_family(&params, gamma, id == "ellp-family", blocks.len(), e)
                    }
                    other => return Err(unknown_condition(other)),
                }
            }
            (Problem::RootsetFamily { sets }, "rootset-family") => {
                eval_rootset_family(g, &sets_from_json(sets, n)?, &blocks)
            }
            (Problem::FixedRoots { roots }, "indeg-rootcount") => {
                let roots = roots_from_json(roots, n)?;
                (
                    roots.restricted_size(x) as i64 + g.in_degree(x)? as i64,
                    roots.total() as i64,
                )
            }
            (Problem::RootSetBranchings { sets }, "rootset-indeg") => {
                let sets = sets_from_json(sets, n)?;
                (
                    sets.iter().filter(|&&s| s & x != 0).count() as i64
                        + g.in_degree(x)? as i64,
                    sets.len() as i64,
                )
            }
            (Problem::Flexible { k }, "flex-family") => (
                g.border_count(&blocks) as i64 + *k as i64,
                *k as i64 * blocks.len() as i64,
            ),
            (Problem::FgBounded { k, f, g: gb }, id) => match id {
                "fg-le" => {
                    let v = vertex_of_z()?;
                    (gb[v] as i64, f[v] as i64)
                }
                "fg-family" => {
                    let u = union_of(&blocks);
                    let cap = (*k as i64 - msum(f, full & !u)).min(msum(gb, u));
                    (
                        g.border_count(&blocks) as i64 + cap,
                        *k as i64 * blocks.len() as i64,
                    )
                }
                other => return Err(unknown_condition(other)),
            },
            (
                Problem::HRegularLimited { h, f, g: gb, alpha, beta }
                | Problem::MixedLimited { h, f, g: gb, alpha, beta },
                id,
            ) => {
                let truncate_g = matches!(self, Problem::MixedLimited { .. });
                match id {
                    "fg-le" => {
                        let v = vertex_of_z()?;
                        (gb[v].min(*h) as i64, f[v] as i64)
                    }
                    "alpha-cap" => {
                        ((*beta as i64).min(ghsum(gb, *h, full)), *alpha as i64)
                    }
                    "bf-family" | "limited-family" => {
                        let u = union_of(&blocks);
                        let gu = if truncate_g { ghsum(gb, *h, u) } else { msum(gb, u) };
                        let cap = (*beta as i64 - msum(f, full & !u)).min(gu);
                        (
                            g.border_count(&blocks) as i64 + cap,
                            *h as i64 * blocks.len() as i64,
                        )
                    }
                    other => return Err(unknown_condition(other)),
                }
            }
            (Problem::MatroidBasisRooted { h, f, g: gb, roots, matroid }, id) => {
                let roots = roots_from_json(roots, n)?;
                let oracle = matroid.to_oracle(roots.total() as usize, caps)?;
                match id {
                    "fg-le" => {
                        let v = vertex_of_z()?;
                        (gb[v].min(*h) as i64, f[v] as i64)
                    }
                    "basis-span" => (
                        oracle.rank_restricted(&roots, x) as i64 + ghsum(gb, *h, full & !x),
                        oracle.full_rank() as i64,
                    ),
                    "basis-family" => (
                        g.border_count(&blocks) as i64
                            + basis_term(g, *h, f, gb, &roots, &oracle, x, z),
                        *h as i64 * blocks.len() as i64,
                    ),
                    other => return Err(unknown_condition(other)),
                }
            }
            (Problem::FixedRootsAug { roots, gamma }, "aug-rootcount-family") => {
                let roots = roots_from_json(roots, n)?;
                let hit: i64 = blocks.iter().map(|&b| roots.restricted_size(b) as i64).sum();
                (
                    *gamma as i64 + g.border_count(&blocks) as i64 + hit,
                    roots.total() as i64 * blocks.len() as i64,
                )
            }
            (Problem::FlexibleAug { k, gamma }, "aug-flex-family") => (
                *gamma as i64 + g.border_count(&blocks) as i64 + *k as i64,
                *k as i64 * blocks.len() as i64,
            ),
            (_, other) => return Err(unknown_condition(other)),
        })
    }
}

fn unknown_condition(id: &str) -> Error {
    Error::input(format!("condition {id:?} does not belong to this problem kind"))
}

fn sets_from_json(sets: &[Vec<usize>], n: usize) -> Result<Vec<crate::hypercore::VertSet>> {
    let mut out = Vec::with_capacity(sets.len());
    for s in sets {
        if let Some(&v) = s.iter().find(|&&v| v >= n) {
            return Err(Error::input(format!("root-set vertex {v} out of range")));
        }
        out.push(vec_set(s));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Requirements as JSON for the verify command
// ---------------------------------------------------------------------------

/// JSON-friendly form of [`Requirements`]; every field optional.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequirementsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub spanning: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub single_root: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_beta: Option<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell_prime: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_roots: Option<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_root_sets: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matroid: Option<MatroidJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub matroid_basis: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub hyperforest: bool,
    /// Edge indices the packing must use (hyperedges then dyperedges).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub must_use: Vec<usize>,
}

impl RequirementsJson {
    pub fn to_requirements(&self, n: usize, caps: &Caps) -> Result<Requirements> {
        let fixed_roots = match &self.fixed_roots {
            Some(m) => Some(roots_from_json(m, n)?),
            None => None,
        };
        let fixed_root_sets = match &self.fixed_root_sets {
            Some(sets) => Some(sets_from_json(sets, n)?),
            None => None,
        };
        let matroid = match (&self.roots, &self.matroid) {
            (Some(rm), m) => {
                let roots = roots_from_json(rm, n)?;
                let oracle = m
                    .clone()
                    .unwrap_or(MatroidJson::Free)
                    .to_oracle(roots.total() as usize, caps)?;
                Some(MatroidRequirement { roots, oracle, basis: self.matroid_basis })
            }
            (None, Some(_)) => {
                return Err(Error::input("a matroid requirement needs a roots map".to_string()))
            }
            (None, None) => None,
        };
        let mut must_use = 0u64;
        for &i in &self.must_use {
            if i >= 64 {
                return Err(Error::input(format!("must-use edge index {i} out of range")));
            }
            must_use |= 1u64 << i;
        }
        Ok(Requirements {
            k: self.k,
            h: self.h,
            spanning: self.spanning,
            single_root: self.single_root,
            f: self.f.clone(),
            g: self.g.clone(),
            alpha_beta: self.alpha_beta,
            ell: self.ell.clone(),
            ell_prime: self.ell_prime.clone(),
            fixed_roots,
            fixed_root_sets,
            matroid,
            hyperforest: self.hyperforest,
            must_use,
        })
    }
}

/// RootMultiset back to the JSON map form used in problem files.
pub fn roots_to_json(r: &RootMultiset) -> BTreeMap<String, u32> {
    let mut m = BTreeMap::new();
    for v in 0..r.n() {
        if r.count(v) > 0 {
            m.insert(v.to_string(), r.count(v));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::InstanceJson;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn parse_and_check_edmonds() {
        let g: MixedHypergraph = InstanceJson {
            n: 3,
            hyperedges: vec![],
            dyperedges: vec![],
            arcs: vec![(0, 1), (1, 2), (2, 0)],
        }
        .to_graph()
        .unwrap();
        let p: Problem =
            serde_json::from_str(r#"{"kind":"fixed-roots","roots":{"0":1}}"#).unwrap();
        assert!(p.check(&g, &caps()).unwrap().is_none());
        let out = p.solve(&g, &caps()).unwrap().feasible().unwrap();
        assert_eq!(out.witness.members.len(), 1);
    }

    #[test]
    fn reevaluate_matches_stored_values() {
        let g = MixedHypergraph::digraph(2, &[]).unwrap();
        let p: Problem = serde_json::from_str(r#"{"kind":"flexible","k":1}"#).unwrap();
        let cert = p.check(&g, &caps()).unwrap().unwrap();
        let (lhs, rhs) = p.reevaluate(&g, &cert, &caps()).unwrap();
        assert_eq!((lhs, rhs), (cert.lhs, cert.rhs));
    }

    #[test]
    fn min_gamma_through_problem() {
        let g = MixedHypergraph::digraph(2, &[]).unwrap();
        let p: Problem =
            serde_json::from_str(r#"{"kind":"flexible-aug","k":1,"gamma":0}"#).unwrap();
        assert_eq!(p.min_gamma(&g, 3, &caps()).unwrap(), Some(1));
    }

    #[test]
    fn requirements_json_round_trip() {
        let rj: RequirementsJson = serde_json::from_str(
            r#"{"k":1,"spanning":true,"single_root":true,"must_use":[0]}"#,
        )
        .unwrap();
        let r = rj.to_requirements(3, &caps()).unwrap();
        assert_eq!(r.k, Some(1));
        assert!(r.spanning && r.single_root);
        assert_eq!(r.must_use, 1);
    }
}
