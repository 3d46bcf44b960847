//! Scalar models of the reassociation groupoid: every forward move acts
//! by a fixed central unit `ζ`, so a loop acts by `ζ^d` where `d` is its
//! signed edge count.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize, Serializer};

use crate::assoc::{enumerate_assocs, graft_object, Assoc, Partition};
use crate::complex::{all_moves, ArityTriple, FillPolicy, OrientedEdge, TwoComplex};
use crate::error::{Error, Result};
use crate::group::{abelian_invariants, AbelianInvariants};
use crate::operad::graft_move;
use crate::presentation::{oracle_raw, simplify, GenLabel, SimplifyOptions};

/// `ζ` generating a cyclic group of the given order, or infinite cyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarModel {
    pub zeta_order: Option<u64>,
}

/// Multiplicative order of an element; `Infinite` for infinite cyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(m) => s.serialize_u64(*m),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

impl ScalarModel {
    pub fn cyclic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("cyclic order must be positive"));
        }
        Ok(ScalarModel {
            zeta_order: Some(m),
        })
    }

    pub fn infinite() -> Self {
        ScalarModel { zeta_order: None }
    }

    pub fn is_trivial(&self) -> bool {
        self.zeta_order == Some(1)
    }

    /// Order of `ζ^d`.
    pub fn order_of_power(&self, d: i64) -> Order {
        match self.zeta_order {
            Some(m) => Order::Finite(m / m.gcd(&d.unsigned_abs())),
            None if d == 0 => Order::Finite(1),
            None => Order::Infinite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LoopValue {
    pub exponent: i64,
    pub order: Order,
}

impl LoopValue {
    pub fn is_trivial(&self) -> bool {
        self.order == Order::Finite(1)
    }
}

pub fn loop_value(cx: &TwoComplex, path: &[OrientedEdge], model: ScalarModel) -> Result<LoopValue> {
    if let Some((start, end)) = cx.path_endpoints(path)? {
        if start != end {
            return Err(Error::domain("edge path is not closed"));
        }
    }
    let exponent = path.iter().map(|oe| if oe.forward { 1 } else { -1 }).sum();
    Ok(LoopValue {
        exponent,
        order: model.order_of_power(exponent),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub exponent: i64,
    pub order: Order,
}

/// Values of the loops (tree path, chord, tree path back) behind the
/// generators of the simplified oracle presentation.
pub fn generator_image(cx: &TwoComplex, model: ScalarModel) -> Result<Vec<GeneratorImage>> {
    let tree = cx.mis_spanning_tree();
    let raw = oracle_raw(cx, FillPolicy::Squares)?;
    let p = simplify(&raw, SimplifyOptions { tietze: true });
    p.live_generators()
        .into_iter()
        .map(|g| {
            let GenLabel::Edge { index, .. } = p.generators[g].label else {
                return Err(Error::Invariant("oracle generator is not an edge".into()));
            };
            let e = &cx.edges[index];
            let exponent = tree.potential[e.source] + 1 - tree.potential[e.target];
            Ok(GeneratorImage {
                generator: p.generator_label(g),
                exponent,
                order: model.order_of_power(exponent),
            })
        })
        .collect()
}

/// Image of `π(A_n)` in the coefficient group: generated by `ζ^gcd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImageSubgroup {
    pub gcd: u64,
    pub order: Order,
}

impl ImageSubgroup {
    pub fn is_trivial(&self) -> bool {
        self.order == Order::Finite(1)
    }
}

pub fn image_subgroup(images: &[GeneratorImage], model: ScalarModel) -> ImageSubgroup {
    let g = images
        .iter()
        .fold(0u64, |acc, im| acc.gcd(&im.exponent.unsigned_abs()));
    ImageSubgroup {
        gcd: g,
        order: model.order_of_power(g as i64),
    }
}

/// Order of the value of the pentagon loop of `A_4`.
pub fn pentagon_order(model: ScalarModel) -> Result<Order> {
    let cx = TwoComplex::build(4)?;
    let face = cx
        .pentagons
        .first()
        .ok_or_else(|| Error::Invariant("A_4 has no pentagon".into()))?;
    Ok(loop_value(&cx, &face.boundary, model)?.order)
}

/// First homology of the complex with squares and pentagons filled.
pub fn maclane_h1(n: usize) -> Result<AbelianInvariants> {
    let cx = TwoComplex::build(n)?;
    let raw = oracle_raw(&cx, FillPolicy::SquaresAndPentagons)?;
    Ok(abelian_invariants(&simplify(
        &raw,
        SimplifyOptions { tietze: true },
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub bracket: ArityTriple,
    pub target_n: usize,
    pub reached: BTreeSet<ArityTriple>,
    pub expected: BTreeSet<ArityTriple>,
    pub monotone: bool,
    pub complete: bool,
}

/// Grafts every move of arity `bracket` with every combination of left
/// combs whose sizes sum to `target_n` and collects the resulting arities.
/// Complete when they are exactly the componentwise-larger brackets.
pub fn theorem1_check(bracket: ArityTriple, target_n: usize) -> Result<Theorem1Report> {
    let n = bracket.weight();
    if bracket.j < 2 {
        return Err(Error::domain("bracket must have middle arity at least 2"));
    }
    if target_n < n {
        return Err(Error::domain(format!("target {target_n} is below {n}")));
    }
    let moves: Vec<_> = all_moves(n)?
        .into_iter()
        .filter(|m| m.arity() == bracket)
        .collect();
    let mut reached = BTreeSet::new();
    let mut monotone = true;
    for p in Partition::compositions(target_n, n) {
        let gs: Vec<Assoc> = p.parts().iter().map(|&m| Assoc::left_comb(m)).collect();
        for m in &moves {
            let a = graft_move(m, &gs)?.arity();
            monotone &= a.dominates(&bracket);
            reached.insert(a);
        }
    }
    let expected: BTreeSet<ArityTriple> = ArityTriple::all_of_weight(target_n)
        .into_iter()
        .filter(|t| t.dominates(&bracket))
        .collect();
    let complete = monotone && reached == expected;
    Ok(Theorem1Report {
        bracket,
        target_n,
        reached,
        expected,
        monotone,
        complete,
    })
}

/// Exhaustive monotonicity over every move of `A_n` grafted with every
/// tuple of bracketings of total size `target_n`.
pub fn exhaustive_monotonicity(n: usize, target_n: usize) -> Result<bool> {
    let moves = all_moves(n)?;
    for p in Partition::compositions(target_n, n) {
        let per_part: Vec<Vec<Assoc>> = p
            .parts()
            .iter()
            .map(|&m| enumerate_assocs(m))
            .collect::<Result<_>>()?;
        for gs in itertools::Itertools::multi_cartesian_product(per_part.into_iter()) {
            for m in &moves {
                let after = graft_move(m, &gs)?;
                debug_assert_eq!(after.source, graft_object(&m.source, &gs)?);
                if !after.arity().dominates(&m.arity()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub n: usize,
    pub zeta_order: Option<u64>,
    pub generator_exponents: Vec<GeneratorImage>,
    pub image_order: Order,
    pub pentagon_order: Order,
}

pub fn coherence_report(n: usize, model: ScalarModel) -> Result<CoherenceReport> {
    let cx = TwoComplex::build(n)?;
    let images = generator_image(&cx, model)?;
    let sub = image_subgroup(&images, model);
    Ok(CoherenceReport {
        n,
        zeta_order: model.zeta_order,
        generator_exponents: images,
        image_order: sub.order,
        pentagon_order: pentagon_order(model)?,
    })
}
