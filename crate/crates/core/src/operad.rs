//! Grafting of bracketings and moves, the hom-categories of partial
//! associations and their horizontal and vertical composition.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::assoc::{enumerate_assocs, graft_object, Address, Assoc, Partition};
use crate::complex::{ArityTriple, Move};
use crate::error::{Error, Result};

/// The move at the same site of the grafted source. Grafting replaces
/// leaves only, so internal-node addresses are unchanged.
pub fn graft_move(m: &Move, gs: &[Assoc]) -> Result<Move> {
    let source = graft_object(&m.source, gs)?;
    Move::new(source, m.site.clone())
}

/// A move inside the `idx`-th argument of a grafting, placed in the grafted
/// tree.
pub fn graft_component_move(f: &Assoc, gs: &[Assoc], idx: usize, m: &Move) -> Result<Move> {
    let slot = gs
        .get(idx)
        .ok_or_else(|| Error::domain(format!("no argument {idx} in grafting")))?;
    if *slot != m.source {
        return Err(Error::Composition(format!(
            "argument {idx} is {slot} but the move starts at {}",
            m.source
        )));
    }
    let source = graft_object(f, gs)?;
    let leaf = f.leaf_addresses()[idx].clone();
    Move::new(source, leaf.concat(&m.site))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monotonicity {
    pub before: ArityTriple,
    pub after: ArityTriple,
    pub monotone: bool,
}

pub fn arity_monotonicity(m: &Move, gs: &[Assoc]) -> Result<Monotonicity> {
    let before = m.arity();
    let after = graft_move(m, gs)?.arity();
    Ok(Monotonicity {
        before,
        after,
        monotone: after.dominates(&before),
    })
}

/// An object of `Hom(n, k)`: `k` bracketings whose leaf counts form the
/// partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomCell {
    pub partition: Partition,
    pub components: Vec<Assoc>,
}

impl HomCell {
    pub fn new(components: Vec<Assoc>) -> Result<Self> {
        let partition = Partition::new(components.iter().map(Assoc::leaves).collect())?;
        Ok(HomCell {
            partition,
            components,
        })
    }

    /// `k` single letters.
    pub fn identity(k: usize) -> Self {
        HomCell {
            partition: Partition::ones(k),
            components: vec![Assoc::Leaf; k],
        }
    }

    pub fn total(&self) -> usize {
        self.partition.total()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl std::fmt::Display for HomCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.components.iter().map(Assoc::encode).collect();
        write!(f, "[{}] over {}", parts.join(" | "), self.partition)
    }
}

/// All objects of `Hom(n, k)`, partitions in lexicographic order.
pub fn hom_cells(n: usize, k: usize) -> Result<Vec<HomCell>> {
    if k == 0 || n == 0 {
        return Err(Error::domain("hom_cells needs n, k >= 1"));
    }
    let mut out = Vec::new();
    for p in Partition::compositions(n, k) {
        let per_part: Vec<Vec<Assoc>> = p
            .parts()
            .iter()
            .map(|&m| enumerate_assocs(m))
            .collect::<Result<_>>()?;
        for comps in per_part.into_iter().multi_cartesian_product() {
            out.push(HomCell {
                partition: p.clone(),
                components: comps,
            });
        }
    }
    Ok(out)
}

/// `g ∘_H f`: component `i` grafts `g_i` onto the block of `f` it covers.
pub fn horizontal_compose(g: &HomCell, f: &HomCell) -> Result<HomCell> {
    if g.total() != f.len() {
        return Err(Error::domain(format!(
            "arity mismatch: outer cell takes {} inputs, inner cell has {} components",
            g.total(),
            f.len()
        )));
    }
    let comps = (0..g.len())
        .map(|i| graft_object(&g.components[i], &f.components[g.partition.block(i)]))
        .collect::<Result<Vec<_>>>()?;
    HomCell::new(comps)
}

/// A move traversed forward (source to target) or backward.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedMove {
    pub mv: Move,
    pub forward: bool,
}

impl SignedMove {
    pub fn forward(mv: Move) -> Self {
        SignedMove { mv, forward: true }
    }

    pub fn backward(mv: Move) -> Self {
        SignedMove { mv, forward: false }
    }

    pub fn start(&self) -> Assoc {
        if self.forward {
            self.mv.source.clone()
        } else {
            self.mv.target()
        }
    }

    pub fn end(&self) -> Assoc {
        if self.forward {
            self.mv.target()
        } else {
            self.mv.source.clone()
        }
    }

    pub fn sign(&self) -> i64 {
        if self.forward {
            1
        } else {
            -1
        }
    }
}

/// A 2-cell of `Hom(n, k)`: one edge path per component, partition fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPath {
    pub start: HomCell,
    pub components: Vec<Vec<SignedMove>>,
}

impl HomPath {
    pub fn identity(start: HomCell) -> Self {
        let k = start.len();
        HomPath {
            start,
            components: vec![Vec::new(); k],
        }
    }

    /// Validates that every component path is connected and starts at the
    /// corresponding start tree.
    pub fn new(start: HomCell, components: Vec<Vec<SignedMove>>) -> Result<Self> {
        if components.len() != start.len() {
            return Err(Error::Composition(format!(
                "{} component paths for {} components",
                components.len(),
                start.len()
            )));
        }
        for (i, path) in components.iter().enumerate() {
            let mut cur = start.components[i].clone();
            for step in path {
                if step.start() != cur {
                    return Err(Error::Composition(format!(
                        "component {i}: step starts at {} but path is at {cur}",
                        step.start()
                    )));
                }
                cur = step.end();
            }
        }
        Ok(HomPath { start, components })
    }

    pub fn partition(&self) -> &Partition {
        &self.start.partition
    }

    pub fn end(&self) -> HomCell {
        let comps = self
            .components
            .iter()
            .zip(&self.start.components)
            .map(|(path, s)| path.last().map_or_else(|| s.clone(), SignedMove::end))
            .collect();
        HomCell {
            partition: self.start.partition.clone(),
            components: comps,
        }
    }

    /// Forward steps minus backward steps, summed over components.
    pub fn signed_length(&self) -> i64 {
        self.components.iter().flatten().map(SignedMove::sign).sum()
    }

    pub fn step_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }
}

/// `p2 ∘_V p1`: componentwise concatenation.
pub fn vertical_compose(p2: &HomPath, p1: &HomPath) -> Result<HomPath> {
    if p1.partition() != p2.partition() {
        return Err(Error::Composition(format!(
            "partitions differ: {} and {}",
            p1.partition(),
            p2.partition()
        )));
    }
    if p1.end() != p2.start {
        return Err(Error::Composition(format!(
            "end {} does not match start {}",
            p1.end(),
            p2.start
        )));
    }
    let components = p1
        .components
        .iter()
        .zip(&p2.components)
        .map(|(a, b)| a.iter().chain(b).cloned().collect())
        .collect();
    Ok(HomPath {
        start: p1.start.clone(),
        components,
    })
}

/// `γ ∘_H φ` on 2-cells: in each output component the moves of `γ_i` run
/// first with the `φ` arguments at their start trees, then the moves of
/// each `φ_j` in its block run inside the grafted end tree of `γ_i`.
pub fn horizontal_compose_paths(gamma: &HomPath, phi: &HomPath) -> Result<HomPath> {
    let start = horizontal_compose(&gamma.start, &phi.start)?;
    let gamma_end = gamma.end();
    let mut components = Vec::with_capacity(gamma.components.len());
    for (i, gpath) in gamma.components.iter().enumerate() {
        let block = gamma.start.partition.block(i);
        let mut args: Vec<Assoc> = phi.start.components[block.clone()].to_vec();
        let mut steps = Vec::new();
        for s in gpath {
            steps.push(SignedMove {
                mv: graft_move(&s.mv, &args)?,
                forward: s.forward,
            });
        }
        let outer = &gamma_end.components[i];
        for (local, j) in block.enumerate() {
            for s in &phi.components[j] {
                let (before, after) = (s.start(), s.end());
                let mv = if s.forward {
                    graft_component_move(outer, &args, local, &s.mv)?
                } else {
                    args[local] = after.clone();
                    let m = graft_component_move(outer, &args, local, &s.mv)?;
                    args[local] = before;
                    m
                };
                steps.push(SignedMove {
                    mv,
                    forward: s.forward,
                });
                args[local] = after;
            }
        }
        components.push(steps);
    }
    HomPath::new(start, components)
}

/// Objects and moves: `Q(Q(h; gs); fs) = Q(h; Q(g_1; fs_1), ..)`, checked on
/// `h` itself, on every move of `h` and on every move of every `g_i`.
pub fn check_operad_associativity(h: &Assoc, gs: &[Assoc], fs: &[Assoc]) -> Result<bool> {
    let hg = HomCell::new(gs.to_vec())?;
    if h.leaves() != gs.len() || hg.total() != fs.len() {
        return Err(Error::domain(
            "incompatible arities for associativity check",
        ));
    }
    let inner: Vec<Assoc> = (0..gs.len())
        .map(|i| graft_object(&gs[i], &fs[hg.partition.block(i)]))
        .collect::<Result<_>>()?;
    let lhs = graft_object(&graft_object(h, gs)?, fs)?;
    let rhs = graft_object(h, &inner)?;
    if lhs != rhs {
        return Ok(false);
    }
    for site in crate::complex::rotation_sites(h) {
        let m = Move::new(h.clone(), site)?;
        if graft_move(&graft_move(&m, gs)?, fs)? != graft_move(&m, &inner)? {
            return Ok(false);
        }
    }
    for (i, g) in gs.iter().enumerate() {
        let block = &fs[hg.partition.block(i)];
        for site in crate::complex::rotation_sites(g) {
            let m = Move::new(g.clone(), site)?;
            // move m inside g_i, then graft fs; versus graft fs into m, then place in h
            let lhs = graft_move(&graft_component_move(h, gs, i, &m)?, fs)?;
            let rhs = graft_component_move(h, &inner, i, &graft_move(&m, block)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Interchange law for `n → k → l`: both sides must start and end at the
/// same cells and carry the same signed length, which is what every scalar
/// model sees of a loop.
pub fn check_interchange(
    phi: &HomPath,
    phi2: &HomPath,
    gamma: &HomPath,
    gamma2: &HomPath,
) -> Result<bool> {
    let lhs = vertical_compose(
        &horizontal_compose_paths(gamma2, phi2)?,
        &horizontal_compose_paths(gamma, phi)?,
    )?;
    let rhs = horizontal_compose_paths(
        &vertical_compose(gamma2, gamma)?,
        &vertical_compose(phi2, phi)?,
    )?;
    Ok(lhs.start == rhs.start
        && lhs.end() == rhs.end()
        && lhs.signed_length() == rhs.signed_length())
}

/// Grafting a two-letter tree into the middle letter of the MIS move on
/// `(A(BC))` gives a move with middle arity 2.
pub fn mis_grafting_example() -> Result<(Move, Move)> {
    let m = Move::new(Assoc::right_comb(3), Address::root())?;
    let gs = [Assoc::Leaf, Assoc::left_comb(2), Assoc::Leaf];
    let grafted = graft_move(&m, &gs)?;
    Ok((m, grafted))
}
