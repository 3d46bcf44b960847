//! Counts and invariants checked against independently computed values.

mod common;

use std::collections::BTreeSet;

use assoc_coherence::complex::{classify_move, FillPolicy, GeneratorName, TwoComplex};
use assoc_coherence::group::{abelian_invariants, freeness_verdict, FreenessVerdict};
use assoc_coherence::presentation::{
    oracle_raw, presentation_from_complex, scheme_presentation, simplify, GenStatus, Listing,
    SimplifyOptions,
};
use assoc_coherence::{catalan, enumerate_assocs};

#[test]
fn catalan_counts_match_recurrence() {
    let c = common::catalan_recurrence(12);
    for (n, &cn) in c.iter().enumerate().skip(1) {
        assert_eq!(catalan(n).unwrap(), cn, "n = {n}");
    }
    for (n, &cn) in c.iter().enumerate().take(9).skip(1) {
        assert_eq!(enumerate_assocs(n).unwrap().len() as u64, cn);
    }
}

#[test]
fn edge_counts_match_closed_form() {
    let c = common::catalan_recurrence(9);
    for n in 3..=8 {
        let cx = TwoComplex::build(n).unwrap();
        // every internal node with an internal right child is a move site
        let m = n - 1;
        assert_eq!(
            2 * cx.edges.len() as u64,
            (m as u64 - 1) * c[m + 1],
            "n = {n}"
        );
    }
}

#[test]
fn square_counts_match_hasse_graph() {
    for n in 3..=8 {
        let cx = TwoComplex::build(n).unwrap();
        assert_eq!(cx.squares.len(), common::squares_from_graph(&cx), "n = {n}");
    }
    assert_eq!(TwoComplex::build(5).unwrap().squares.len(), 3);
}

#[test]
fn pentagon_counts_match_patterns_and_binomial() {
    for n in 4..=8 {
        let cx = TwoComplex::build(n).unwrap();
        let patterns: usize = cx.vertices.iter().map(common::pentagon_patterns).sum();
        assert_eq!(cx.pentagons.len(), patterns, "n = {n}");
        let n = n as u64;
        assert_eq!(
            cx.pentagons.len() as u64,
            common::binomial(2 * n - 4, n - 4)
        );
    }
}

#[test]
fn boundary_rank_matches_mod_p_rank() {
    for n in 4..=7 {
        let cx = TwoComplex::build(n).unwrap();
        for fill in [FillPolicy::Squares, FillPolicy::SquaresAndPentagons] {
            let rows: Vec<Vec<(usize, i64)>> = cx
                .cell_boundaries(fill)
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|oe| (oe.edge, if oe.forward { 1 } else { -1 }))
                        .collect()
                })
                .collect();
            assert_eq!(
                cx.boundary_rank(fill),
                common::rank_mod_p(cx.edges.len(), &rows)
            );
        }
    }
}

#[test]
fn euler_characteristic_agrees_with_oracle_rank() {
    for n in 3..=8 {
        let cx = TwoComplex::build(n).unwrap();
        let s = cx.stats();
        let expected = s.edges + 1 - s.vertices - cx.boundary_rank(FillPolicy::Squares);
        let p = presentation_from_complex(n, FillPolicy::Squares).unwrap();
        let inv = abelian_invariants(&p);
        assert_eq!(inv.free_rank, expected, "n = {n}");
        assert!(inv.torsion.is_empty());
    }
}

#[test]
fn scheme_and_oracle_abelianizations_agree() {
    for n in 3..=7 {
        let oracle =
            abelian_invariants(&presentation_from_complex(n, FillPolicy::Squares).unwrap());
        for listing in [Listing::Tables, Listing::Literal] {
            let scheme = abelian_invariants(&scheme_presentation(n, listing, true).unwrap());
            assert_eq!(scheme, oracle, "n = {n}, {listing:?}");
        }
    }
}

#[test]
fn small_groups_are_free_of_expected_rank() {
    for (n, rank) in [(3, 0), (4, 1), (5, 5), (6, 15)] {
        for p in [
            presentation_from_complex(n, FillPolicy::Squares).unwrap(),
            scheme_presentation(n, Listing::Tables, true).unwrap(),
        ] {
            assert_eq!(
                freeness_verdict(&p),
                FreenessVerdict::Free { rank },
                "n = {n}"
            );
        }
    }
}

#[test]
fn seven_is_not_free_by_both_methods() {
    for p in [
        presentation_from_complex(7, FillPolicy::Squares).unwrap(),
        scheme_presentation(7, Listing::Tables, true).unwrap(),
    ] {
        let FreenessVerdict::NonFree { witnesses } = freeness_verdict(&p) else {
            panic!("expected a commutator witness");
        };
        assert!(witnesses
            .iter()
            .any(|w| w.generators.iter().any(|g| g.starts_with("<4,2,1>"))));
        assert!(witnesses
            .iter()
            .any(|w| w.generators.iter().any(|g| g.starts_with("<1,2,4>"))));
    }
}

#[test]
fn mis_edges_are_trivial_in_oracle() {
    for n in 4..=7 {
        let cx = TwoComplex::build(n).unwrap();
        let raw = oracle_raw(&cx, FillPolicy::Squares).unwrap();
        let p = simplify(&raw, SimplifyOptions { tietze: true });
        for g in &p.generators {
            if g.label.name().is_mis() {
                assert_eq!(g.status, GenStatus::Killed, "{}", g.label);
            }
        }
    }
}

#[test]
fn edge_classes_match_literal_scheme_names() {
    use assoc_coherence::presentation::scheme_levels;
    let levels = scheme_levels(7, Listing::Literal).unwrap();
    for n in 3..=7 {
        let cx = TwoComplex::build(n).unwrap();
        let from_edges: BTreeSet<GeneratorName> = cx.edges.iter().map(|e| e.name.clone()).collect();
        let from_scheme: BTreeSet<GeneratorName> = levels[n - 1]
            .raw
            .generators
            .iter()
            .map(|g| g.label.name().clone())
            .collect();
        assert_eq!(from_edges, from_scheme, "n = {n}");
        for (e, edge) in cx.edges.iter().enumerate() {
            assert_eq!(classify_move(&cx.edge_move(e)), edge.name);
        }
    }
}

#[test]
fn amalgamations_identify_prefix_words() {
    use assoc_coherence::presentation::scheme_levels;
    let levels = scheme_levels(7, Listing::Literal).unwrap();
    let seven = &levels[6];
    let name = |s: &str| s.parse::<GeneratorName>().unwrap();
    assert!(seven.same_class(&name("λ^2λ<1,2,1>"), &name("λλ^2<1,2,1>")));
    assert!(seven.same_class(&name("λ^3<1,2,1>"), &name("λλλ<1,2,1>")));
    assert!(seven.same_class(&name("ρ^2ρ<1,2,1>"), &name("ρρ^2<1,2,1>")));
    assert!(seven.same_class(&name("ρ^3<1,2,1>"), &name("ρρρ<1,2,1>")));
    assert!(!seven.same_class(&name("λ^3<1,2,1>"), &name("ρ^3<1,2,1>")));
}

#[test]
fn mac_lane_fill_is_acyclic() {
    for n in 4..=8 {
        let inv = assoc_coherence::scalar::maclane_h1(n).unwrap();
        assert!(inv.is_trivial(), "n = {n}: {inv}");
    }
}

#[test]
fn regression_values() {
    // derived once from the oracle; guards against silent drift
    let stats: Vec<(usize, usize, usize)> = (5..=8)
        .map(|n| {
            let s = TwoComplex::build(n).unwrap().stats();
            (s.edges, s.squares, s.pentagons)
        })
        .collect();
    assert_eq!(
        stats,
        vec![(21, 3, 6), (84, 28, 28), (330, 180, 120), (1287, 990, 495)]
    );
    let p7 = presentation_from_complex(7, FillPolicy::Squares).unwrap();
    assert_eq!(abelian_invariants(&p7).free_rank, 35);
    let p8 = presentation_from_complex(8, FillPolicy::Squares).unwrap();
    assert_eq!(abelian_invariants(&p8).free_rank, 70);
}
