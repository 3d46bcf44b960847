use assoc_coherence::assoc::{graft_object, Assoc};
use assoc_coherence::complex::{
    apply_move, independent, rotation_sites, transport_move, Move, TwoComplex,
};
use assoc_coherence::group::IntMatrix;
use assoc_coherence::operad::{
    arity_monotonicity, check_interchange, check_operad_associativity, graft_move,
    horizontal_compose_paths, HomCell, HomPath, SignedMove,
};
use assoc_coherence::presentation::{
    oracle_raw, simplify, GenLabel, Letter, Presentation, Provenance, RelatorKind, SimplifyOptions,
    Word,
};
use assoc_coherence::scalar::{loop_value, ScalarModel};
use proptest::prelude::*;
use proptest::test_runner::TestRunner;

use super::{proptest_config, rank_mod_p, tree_from_choices};

fn tree(max: usize) -> impl Strategy<Value = Assoc> {
    (1..=max, prop::collection::vec(any::<u8>(), 16))
        .prop_map(|(n, c)| tree_from_choices(n, &mut c.into_iter()))
}

/// `k` small trees; sizes are trimmed from the end to keep the total
/// within `max_total` (which must be at least `k`).
fn trees_with_total(k: usize, max_total: usize) -> impl Strategy<Value = Vec<Assoc>> {
    prop::collection::vec((1..=3usize, prop::collection::vec(any::<u8>(), 4)), k).prop_map(
        move |mut v| {
            let mut total: usize = v.iter().map(|(n, _)| n).sum();
            for (n, _) in v.iter_mut().rev() {
                while total > max_total && *n > 1 {
                    *n -= 1;
                    total -= 1;
                }
            }
            v.into_iter()
                .map(|(n, c)| tree_from_choices(n, &mut c.into_iter()))
                .collect()
        },
    )
}

/// `(h, gs, fs)` with compatible arities and at most `max` leaves in total.
fn associativity_input(max: usize) -> impl Strategy<Value = (Assoc, Vec<Assoc>, Vec<Assoc>)> {
    tree(4).prop_flat_map(move |h| {
        let k = h.leaves();
        trees_with_total(k, max).prop_flat_map(move |gs| {
            let total: usize = gs.iter().map(Assoc::leaves).sum();
            let h = h.clone();
            trees_with_total(total, max).prop_map(move |fs| (h.clone(), gs.clone(), fs))
        })
    })
}

/// Random walk of `steps` moves (forward or backward) from `start`.
fn random_walk(start: &Assoc, choices: &[u8]) -> Vec<SignedMove> {
    let mut cur = start.clone();
    let mut out = Vec::new();
    for &c in choices {
        let fwd_sites = rotation_sites(&cur);
        // backward moves are forward moves into `cur`
        let back: Vec<Move> = incoming_moves(&cur);
        let total = fwd_sites.len() + back.len();
        if total == 0 {
            break;
        }
        let i = c as usize % total;
        let step = if i < fwd_sites.len() {
            SignedMove::forward(Move::new(cur.clone(), fwd_sites[i].clone()).unwrap())
        } else {
            SignedMove::backward(back[i - fwd_sites.len()].clone())
        };
        cur = step.end();
        out.push(step);
    }
    out
}

fn incoming_moves(t: &Assoc) -> Vec<Move> {
    // inverse rotation (fg)h -> f(gh) at every node with an internal left child
    let mut out = Vec::new();
    for addr in t.internal_addresses() {
        let sub = t.subtree_at(&addr).unwrap();
        if let Assoc::Node(l, h) = sub {
            if let Assoc::Node(f, g) = l.as_ref() {
                let pre = Assoc::node(
                    f.as_ref().clone(),
                    Assoc::node(g.as_ref().clone(), h.as_ref().clone()),
                );
                let source = t.replace_at(&addr, pre).unwrap();
                out.push(Move::new(source, addr.clone()).unwrap());
            }
        }
    }
    out
}

fn cell_and_walks(parts: Vec<usize>, seeds: Vec<(Vec<u8>, Vec<u8>)>) -> (HomPath, Vec<Vec<u8>>) {
    let comps: Vec<Assoc> = parts
        .iter()
        .zip(&seeds)
        .map(|(&m, (c, _))| tree_from_choices(m, &mut c.iter().copied()))
        .collect();
    let cell = HomCell::new(comps).unwrap();
    let walks: Vec<Vec<u8>> = seeds.into_iter().map(|(_, w)| w).collect();
    let paths = cell
        .components
        .iter()
        .zip(&walks)
        .map(|(t, w)| random_walk(t, &w[..2]))
        .collect();
    (HomPath::new(cell, paths).unwrap(), walks)
}

/// Continues a path with a second random walk from its end.
fn follow_on(p: &HomPath, walks: &[Vec<u8>]) -> HomPath {
    let end = p.end();
    let comps = end
        .components
        .iter()
        .zip(walks)
        .map(|(t, w)| random_walk(t, &w[2..]))
        .collect();
    HomPath::new(end, comps).unwrap()
}

/// Parts of phi, parts of gamma, then per-component (shape, walk) seeds for each.
type InterchangeConfig = (
    Vec<usize>,
    Vec<usize>,
    Vec<(Vec<u8>, Vec<u8>)>,
    Vec<(Vec<u8>, Vec<u8>)>,
);

fn interchange_config() -> impl Strategy<Value = InterchangeConfig> {
    // phi: n -> k over parts `pf`; gamma: k -> l over parts `pg`; n <= 8
    prop::collection::vec(1..=3usize, 1..=4)
        .prop_filter("n <= 8", |pf| pf.iter().sum::<usize>() <= 8)
        .prop_flat_map(|pf| {
            let k = pf.len();
            let pg = prop::collection::vec(1..=k, 1..=k).prop_filter_map("sum to k", move |v| {
                let mut out = Vec::new();
                let mut left = k;
                for x in v {
                    if left == 0 {
                        break;
                    }
                    let x = x.min(left);
                    out.push(x);
                    left -= x;
                }
                (left == 0).then_some(out)
            });
            let seeds = |len: usize| {
                prop::collection::vec(
                    (
                        prop::collection::vec(any::<u8>(), 8),
                        prop::collection::vec(any::<u8>(), 4),
                    ),
                    len,
                )
            };
            (Just(pf), pg, seeds(k)).prop_flat_map(move |(pf, pg, sf)| {
                let l = pg.len();
                (Just(pf), Just(pg), Just(sf), seeds(l))
            })
        })
}

fn check(cases: u32, f: impl Fn(&mut TestRunner) -> Result<(), String>) -> Result<(), String> {
    f(&mut TestRunner::new(proptest_config(cases)))
}

pub fn encode_decode_roundtrip() -> Result<(), String> {
    check(256, |r| {
        r.run(&tree(30), |t| {
            let s = t.encode();
            prop_assert_eq!(Assoc::decode(&s).unwrap(), t.clone());
            prop_assert_eq!(s.parse::<Assoc>().unwrap(), t);
            Ok(())
        })
        .map_err(|e| e.to_string())
    })
}

pub fn operad_associativity_objects_and_moves() -> Result<(), String> {
    check(256, |r| {
        r.run(&associativity_input(12), |(h, gs, fs)| {
            prop_assert!(check_operad_associativity(&h, &gs, &fs).unwrap());
            let total: usize = fs.iter().map(Assoc::leaves).sum();
            prop_assert_eq!(
                graft_object(&graft_object(&h, &gs).unwrap(), &fs)
                    .unwrap()
                    .leaves(),
                total
            );
            Ok(())
        })
        .map_err(|e| e.to_string())
    })
}

pub fn arity_monotonicity_for_all_graftings() -> Result<(), String> {
    let input = (
        3usize..=6,
        prop::collection::vec(any::<u8>(), 16),
        any::<prop::sample::Index>(),
    )
        .prop_flat_map(|(n, c, idx)| {
            let t = tree_from_choices(n, &mut c.into_iter());
            (Just(t), Just(idx), trees_with_total(n, 14))
        });
    check(256, |r| {
        r.run(&input, |(t, idx, gs)| {
            let sites = rotation_sites(&t);
            prop_assume!(!sites.is_empty());
            let m = Move::new(t.clone(), idx.get(&sites).clone()).unwrap();
            let rep = arity_monotonicity(&m, &gs).unwrap();
            prop_assert!(rep.monotone, "{:?}", rep);
            // the arity grows by the extra leaves grafted under the site
            let extra: usize = t
                .leaf_addresses()
                .iter()
                .zip(&gs)
                .filter(|(a, _)| m.site.is_prefix_of(a))
                .map(|(_, g)| g.leaves() - 1)
                .sum();
            prop_assert_eq!(rep.after.weight(), rep.before.weight() + extra);
            Ok(())
        })
        .map_err(|e| e.to_string())
    })
}

pub fn independent_moves_commute() -> Result<(), String> {
    check(256, |r| {
        r.run(&tree(12), |t| {
            let sites = rotation_sites(&t);
            for a in &sites {
                for b in &sites {
                    let m1 = Move::new(t.clone(), a.clone()).unwrap();
                    let m2 = Move::new(t.clone(), b.clone()).unwrap();
                    if !independent(&m1, &m2) {
                        continue;
                    }
                    let top1 = apply_move(&transport_move(&m1, &m2).unwrap()).unwrap();
                    let top2 = apply_move(&transport_move(&m2, &m1).unwrap()).unwrap();
                    prop_assert_eq!(top1, top2);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    })
}

pub fn interchange_law() -> Result<(), String> {
    check(256, |r| {
        r.run(&interchange_config(), |(pf, pg, sf, sg)| {
            let (phi, wf) = cell_and_walks(pf, sf);
            let gparts = pg.clone();
            let (gamma, wg) = cell_and_walks(gparts, sg);
            let phi2 = follow_on(&phi, &wf);
            let gamma2 = follow_on(&gamma, &wg);
            prop_assert!(check_interchange(&phi, &phi2, &gamma, &gamma2).unwrap());
            // identity 2-cells compose to an identity
            let id = horizontal_compose_paths(
                &HomPath::identity(gamma.start.clone()),
                &HomPath::identity(phi.start.clone()),
            )
            .unwrap();
            prop_assert_eq!(id.step_count(), 0);
            Ok(())
        })
        .map_err(|e| e.to_string())
    })
}

pub fn interchange_loops_are_scalar_trivial() -> Result<(), String> {
    // both sides joined into a loop evaluate trivially in every cyclic model
    let cx8 = TwoComplex::build(8).unwrap();
    check(200, |r| {
        r.run(&interchange_config(), |(pf, pg, sf, sg)| {
            let (phi, wf) = cell_and_walks(pf, sf);
            let (gamma, wg) = cell_and_walks(pg, sg);
            let phi2 = follow_on(&phi, &wf);
            let gamma2 = follow_on(&gamma, &wg);
            let lhs = assoc_coherence::operad::vertical_compose(
                &horizontal_compose_paths(&gamma2, &phi2).unwrap(),
                &horizontal_compose_paths(&gamma, &phi).unwrap(),
            )
            .unwrap();
            let rhs = horizontal_compose_paths(
                &assoc_coherence::operad::vertical_compose(&gamma2, &gamma).unwrap(),
                &assoc_coherence::operad::vertical_compose(&phi2, &phi).unwrap(),
            )
            .unwrap();
            for c in 0..lhs.components.len() {
                let n = lhs.start.components[c].leaves();
                if n < 3 {
                    continue;
                }
                let cx = if n == 8 {
                    cx8.clone()
                } else {
                    TwoComplex::build(n).unwrap()
                };
                let mut path = Vec::new();
                for s in &lhs.components[c] {
                    path.push(oriented(&cx, s));
                }
                for s in rhs.components[c].iter().rev() {
                    path.push(oriented(&cx, s).inverse());
                }
                for m in [1u64, 2, 3, 5, 7] {
                    let v = loop_value(&cx, &path, ScalarModel::cyclic(m).unwrap()).unwrap();
                    prop_assert!(v.is_trivial());
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    })
}

fn oriented(cx: &TwoComplex, s: &SignedMove) -> assoc_coherence::complex::OrientedEdge {
    let v = cx.vertex_index(&s.mv.source).unwrap();
    let e = cx.edge_at(v, &s.mv.site).unwrap();
    assoc_coherence::complex::OrientedEdge {
        edge: e,
        forward: s.forward,
    }
}

pub fn snf_invariant_under_permutations() -> Result<(), String> {
    let input = (1usize..=7, 1usize..=7).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(prop::collection::vec(-4i64..=4, c), r),
            Just((0..r).collect::<Vec<_>>()).prop_shuffle(),
            Just((0..c).collect::<Vec<_>>()).prop_shuffle(),
        )
    });
    check(256, |r| {
        r.run(&input, |(rows, rp, cp)| {
            let m = IntMatrix::from_dense(&rows);
            let p = m.permuted(&rp, &cp);
            prop_assert_eq!(m.smith_normal_form(), p.smith_normal_form());
            let sparse: Vec<Vec<(usize, i64)>> = rows
                .iter()
                .map(|r| r.iter().copied().enumerate().collect())
                .collect();
            prop_assert_eq!(m.rank(), rank_mod_p(m.ncols(), &sparse));
            Ok(())
        })
        .map_err(|e| e.to_string())
    })
}

pub fn simplify_is_idempotent_and_never_grows() -> Result<(), String> {
    let input = (
        1usize..=6,
        prop::collection::vec(
            prop::collection::vec((0usize..6, any::<bool>()), 1..=4),
            0..=6,
        ),
    );
    check(256, |r| {
        r.run(&input, |(ng, rels)| {
            let mut p = Presentation::new(0, Provenance::Oracle);
            for i in 0..ng {
                p.add_generator(GenLabel::Name {
                    name: format!("<1,{},1>", i + 1).parse().unwrap(),
                });
            }
            for rel in rels {
                let w = Word::new(rel.into_iter().map(|(g, inverse)| Letter {
                    gen: g % ng,
                    inverse,
                }));
                p.add_relator(w, RelatorKind::Inherited);
            }
            for tietze in [false, true] {
                let opts = SimplifyOptions { tietze };
                let s = simplify(&p, opts);
                prop_assert!(s.live_count() <= p.live_count());
                prop_assert_eq!(simplify(&s, opts), s.clone());
                prop_assert_eq!(
                    assoc_coherence::group::abelian_invariants(&s),
                    assoc_coherence::group::abelian_invariants(&simplify(
                        &p,
                        SimplifyOptions::default()
                    ))
                );
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    })
}

pub fn square_boundaries_are_scalar_neutral() -> Result<(), String> {
    for n in 4..=7 {
        let cx = TwoComplex::build(n).map_err(|e| e.to_string())?;
        for s in &cx.squares {
            let v = loop_value(&cx, &s.boundary(), ScalarModel::infinite())
                .map_err(|e| e.to_string())?;
            if v.exponent != 0 {
                return Err(format!("n = {n}: square with exponent {}", v.exponent));
            }
        }
        let raw =
            oracle_raw(&cx, assoc_coherence::FillPolicy::Squares).map_err(|e| e.to_string())?;
        if raw.relators.len() != cx.squares.len() {
            return Err(format!("n = {n}: relator count differs from square count"));
        }
    }
    Ok(())
}

pub fn graft_move_identity() -> Result<(), String> {
    check(200, |r| {
        r.run(&tree(10), |t| {
            for site in rotation_sites(&t) {
                let m = Move::new(t.clone(), site).unwrap();
                prop_assert_eq!(graft_move(&m, &vec![Assoc::Leaf; t.leaves()]).unwrap(), m);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
    })
}
