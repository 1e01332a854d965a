//! Structural invariants: naive quantifier evaluation against the optimized
//! checker, the box pipeline against the checker, uncrossing identities, and
//! end-to-end solver consistency.

mod common;

use proptest::prelude::*;
use rand::Rng;

use arbopack::augment::{build_q4, Feasibility};
use arbopack::caps::Caps;
use arbopack::conditions::{
    check_aug_mixed, eval_maxside, eval_minside, AugMixedParams,
};
use arbopack::gen::rng;
use arbopack::hypercore::{card, for_each_subpartition, uncross, MixedHypergraph, Subpartition, VertSet};
use arbopack::matroids::{MatroidOracle, RootMultiset};
use arbopack::problem::Problem;

use common::{rand_bordered_bounds, rand_instance, rand_roots, rand_vec, GraphClass};
use rand_chacha::ChaCha8Rng;

fn rand_aug_params(r: &mut ChaCha8Rng, n: usize) -> AugMixedParams {
    let total = r.gen_range(1..=3);
    let mut counts = vec![0u32; n];
    for _ in 0..total {
        counts[r.gen_range(0..n)] += 1;
    }
    let matroid = if r.gen_bool(0.5) {
        MatroidOracle::free(total as usize)
    } else {
        MatroidOracle::uniform(total as usize, r.gen_range(0..=total))
    };
    let alpha = r.gen_range(0..=2);
    let (fp, gp, q, qp) = if n == 1 {
        (vec![0], vec![0], 0, 0)
    } else {
        let fp = rand_vec(r, n, 0, 1);
        let gp: Vec<u32> = fp.iter().map(|&x| r.gen_range(x..=2)).collect();
        let q = r.gen_range(0..=2);
        (fp, gp, q, r.gen_range(q..=3))
    };
    AugMixedParams {
        h: r.gen_range(1..=2),
        f: rand_vec(r, n, 0, 1),
        g: rand_vec(r, n, 0, 2),
        fp,
        gp,
        q,
        qp,
        alpha,
        beta: r.gen_range(alpha..=3),
        roots: RootMultiset::new(counts),
        matroid,
    }
}

/// Evaluates every inequality of the augmentation system literally, without
/// the per-Z quantifier elimination used by the checker.
fn naive_aug_feasible(g: &MixedHypergraph, p: &AugMixedParams) -> bool {
    let n = g.n();
    let full = g.full();
    for v in 0..n {
        if (p.g[v].min(p.h) as i64) < p.f[v] as i64 {
            return false;
        }
        if p.gp[v] < p.fp[v] {
            return false;
        }
    }
    if p.beta < p.alpha || p.beta < p.h || p.qp < p.q {
        return false;
    }
    for z in 0..=full {
        for x in 0..=full {
            let (lhs, rhs) = eval_maxside(g, p, x, z);
            if rhs > lhs {
                return false;
            }
            let mut ok = true;
            for_each_subpartition(z, &mut |blocks| {
                let (lhs, rhs) = eval_minside(g, p, x, z, blocks);
                if lhs < rhs {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
    }
    true
}

#[test]
fn checker_matches_naive_quantifier_evaluation() {
    let caps = Caps::default();
    let mut r = rng(0x11A1);
    for _ in 0..120 {
        let g = rand_instance(&mut r, GraphClass::Mixed, 4, 5);
        let p = rand_aug_params(&mut r, g.n());
        let verdict = check_aug_mixed(&g, &p, &caps).unwrap();
        assert_eq!(
            verdict.is_none(),
            naive_aug_feasible(&g, &p),
            "quantifier elimination diverges on {:?} / {:?} ({p:?})",
            g.hyperedges(),
            g.dyperedges(),
        );
    }
}

#[test]
fn box_pipeline_matches_checker_and_yields_valid_split() {
    let caps = Caps::default();
    let mut r = rng(0x11A2);
    let mut feasible = 0;
    for _ in 0..200 {
        let g = rand_instance(&mut r, GraphClass::Mixed, 4, 5);
        let p = rand_aug_params(&mut r, g.n());
        let verdict = check_aug_mixed(&g, &p, &caps).unwrap();
        match build_q4(&g, &p, &caps).unwrap() {
            Feasibility::Feasible(pipe) => {
                assert!(verdict.is_none(), "pipeline nonempty but checker found {verdict:?}");
                let n = g.n();
                for v in 0..n {
                    assert_eq!(pipe.m1[v] + pipe.m2[v], pipe.m[v]);
                    assert!(pipe.m[v] >= 0 && pipe.m[v] <= p.h as i64);
                }
                assert!(pipe.q1.contains_int(&pipe.m1), "head-count part left its region");
                assert!(pipe.q2.contains_int(&pipe.m2), "root part left its region");
                for z in 0..=g.full() {
                    let mz: i64 =
                        (0..n).filter(|&v| (z >> v) & 1 == 1).map(|v| pipe.m[v]).sum();
                    assert!(
                        mz >= g.p_hat(p.h, z, &caps).unwrap(),
                        "combined vector below the deficiency bound"
                    );
                }
                feasible += 1;
            }
            Feasibility::Infeasible(cert) => {
                assert!(verdict.is_some(), "pipeline empty but checker passed; cert {cert:?}");
            }
        }
    }
    assert!(feasible >= 10, "too few feasible pipeline samples ({feasible})");
}

proptest! {
    #[test]
    fn uncross_preserves_counts_and_supports(
        (a1, a2) in (1..=6usize).prop_flat_map(|n| {
            (
                proptest::collection::vec(0..4usize, n),
                proptest::collection::vec(0..4usize, n),
            )
        })
    ) {
        let build = |assign: &[usize]| {
            let mut blocks = vec![0u64; 3];
            for (v, &b) in assign.iter().enumerate() {
                if b > 0 {
                    blocks[b - 1] |= 1u64 << v;
                }
            }
            let blocks: Vec<VertSet> = blocks.into_iter().filter(|&b| b != 0).collect();
            Subpartition::new(blocks).unwrap()
        };
        let p1 = build(&a1);
        let p2 = build(&a2);
        let u = uncross(&p1, &p2);
        prop_assert_eq!(
            u.meet.blocks().len() + u.join.blocks().len(),
            p1.blocks().len() + p2.blocks().len()
        );
        let support = |blocks: &[VertSet]| blocks.iter().fold(0u64, |acc, &b| acc | b);
        let s1 = support(p1.blocks());
        let s2 = support(p2.blocks());
        prop_assert_eq!(support(u.meet.blocks()), s1 & s2);
        prop_assert_eq!(support(u.join.blocks()), s1 | s2);
        for blocks in [u.meet.blocks(), u.join.blocks()] {
            let mut seen = 0u64;
            for &b in blocks {
                prop_assert!(b != 0 && seen & b == 0, "blocks overlap");
                seen |= b;
            }
        }
        let total = |p: &Subpartition| p.blocks().iter().map(|&b| card(b)).sum::<usize>();
        prop_assert_eq!(total(&u.meet) + total(&u.join), total(&p1) + total(&p2));
    }
}

#[test]
fn solver_agrees_with_checker_and_respects_budgets() {
    let caps = Caps::default();
    let mut r = rng(0x11A3);
    for _ in 0..60 {
        for kind in 0..4 {
            let (g, mut p) = match kind {
                0 => {
                    let g = rand_instance(&mut r, GraphClass::Digraph, 4, 4);
                    let total = r.gen_range(1..=2);
                    let roots = rand_roots(&mut r, g.n(), total);
                    (g, Problem::FixedRootsAug { roots, gamma: 0 })
                }
                1 => {
                    let g = rand_instance(&mut r, GraphClass::Digraph, 4, 4);
                    (g, Problem::FlexibleAug { k: r.gen_range(1..=2), gamma: 0 })
                }
                2 | _ => {
                    let directed = kind == 2;
                    let class =
                        if directed { GraphClass::Dypergraph } else { GraphClass::Hypergraph };
                    let g = rand_instance(&mut r, class, 4, 4);
                    let k = r.gen_range(1..=2);
                    let h = r.gen_range(1..=k as u32);
                    let (ell, ellp, alpha, beta) = rand_bordered_bounds(&mut r, k, g.n());
                    let p = if directed {
                        Problem::BorderedDir { h, k, alpha, beta, ell, ellp, gamma: 0 }
                    } else {
                        Problem::BorderedUndir { h, k, alpha, beta, ell, ellp, gamma: 0 }
                    };
                    (g, p)
                }
            };
            let least = p.min_gamma(&g, 3, &caps).unwrap();
            let Some(gamma) = least else { continue };
            p.set_gamma(gamma).unwrap();
            match p.solve(&g, &caps).unwrap() {
                Feasibility::Feasible(out) => {
                    let added = out.added_arcs.len() + out.added_edges.len();
                    assert!(added as u32 <= gamma, "solver exceeded the arc budget");
                }
                Feasibility::Infeasible(cert) => {
                    panic!("solver infeasible at the least feasible budget: {cert:?}")
                }
            }
        }
    }
}
