//! The Catalan groupoid `A_n` as a combinatorial 2-complex.
//!
//! Vertices are associations of `n` letters. Each edge is a forward
//! reassociation `f(gh) -> (fg)h` applied at one node. 2-cells are the
//! commuting squares spanned by two independent reassociations; pentagons
//! are built alongside but only filled on request.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assoc::{enumerate_assocs, Address, Assoc, Step};
use crate::error::{Error, Result};
use crate::group;

/// Leaf counts `<i,j,k>` of the three factors at a rotation site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArityTriple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl ArityTriple {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        assert!(
            i >= 1 && j >= 1 && k >= 1,
            "arity components must be positive"
        );
        ArityTriple { i, j, k }
    }

    pub fn weight(&self) -> usize {
        self.i + self.j + self.k
    }

    pub fn dominates(&self, other: &ArityTriple) -> bool {
        self.i >= other.i && self.j >= other.j && self.k >= other.k
    }

    /// All triples of the given weight, in the order the presentation
    /// tables use: middle arity descending, then left arity ascending.
    pub fn all_of_weight(n: usize) -> Vec<ArityTriple> {
        let mut out = Vec::new();
        if n < 3 {
            return out;
        }
        for j in (1..=n - 2).rev() {
            for i in 1..=n - j - 1 {
                out.push(ArityTriple::new(i, j, n - i - j));
            }
        }
        out
    }
}

impl fmt::Display for ArityTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.i, self.j, self.k)
    }
}

/// One letter of the prefix monoid: `λ_a` skips `a` letters on the left,
/// `ρ_b` skips `b` letters on the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrefixSymbol {
    Lambda(usize),
    Rho(usize),
}

impl PrefixSymbol {
    pub fn skipped(&self) -> usize {
        match *self {
            PrefixSymbol::Lambda(a) | PrefixSymbol::Rho(a) => a,
        }
    }
}

impl fmt::Display for PrefixSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, a) = match *self {
            PrefixSymbol::Lambda(a) => ('λ', a),
            PrefixSymbol::Rho(a) => ('ρ', a),
        };
        if a == 1 {
            write!(f, "{c}")
        } else {
            write!(f, "{c}^{a}")
        }
    }
}

/// A raw word over `{λ_a, ρ_b}`; `λ_2` and `λ_1 λ_1` are different words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrefixWord(pub Vec<PrefixSymbol>);

impl PrefixWord {
    pub fn empty() -> Self {
        PrefixWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn skipped(&self) -> usize {
        self.0.iter().map(PrefixSymbol::skipped).sum()
    }

    pub fn prepend(&self, sym: PrefixSymbol) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(sym);
        v.extend_from_slice(&self.0);
        PrefixWord(v)
    }
}

/// Shorter words first, then symbol by symbol.
impl Ord for PrefixWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PrefixWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrefixWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Naturality class `X<i,j,k>` of a reassociation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorName {
    pub prefix: PrefixWord,
    pub arity: ArityTriple,
}

impl GeneratorName {
    pub fn new(prefix: PrefixWord, arity: ArityTriple) -> Self {
        GeneratorName { prefix, arity }
    }

    pub fn bracket(i: usize, j: usize, k: usize) -> Self {
        GeneratorName::new(PrefixWord::empty(), ArityTriple::new(i, j, k))
    }

    /// Number of letters of the groupoid this name lives in.
    pub fn level(&self) -> usize {
        self.prefix.skipped() + self.arity.weight()
    }

    pub fn prepend(&self, sym: PrefixSymbol) -> Self {
        GeneratorName::new(self.prefix.prepend(sym), self.arity)
    }

    pub fn is_new(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn is_mis(&self) -> bool {
        self.arity.j == 1
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.prefix, self.arity)
    }
}

/// Accepts the display form (`λρ^2<1,2,1>`) and an ASCII variant using
/// `l`/`r` for `λ`/`ρ`.
impl FromStr for GeneratorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |position: usize, message: &str| Error::Parse {
            position,
            message: message.to_string(),
        };
        let chars: Vec<char> = s.trim().chars().collect();
        let mut pos = 0;
        let mut prefix = Vec::new();
        let read_num = |pos: &mut usize| -> Option<usize> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                None
            } else {
                chars[start..*pos].iter().collect::<String>().parse().ok()
            }
        };
        while pos < chars.len() && chars[pos] != '<' {
            let lam = match chars[pos] {
                'λ' | 'l' => true,
                'ρ' | 'r' => false,
                _ => return Err(err(pos, "expected λ, ρ or '<'")),
            };
            pos += 1;
            let mut a = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                a = read_num(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
            } else if pos < chars.len() && chars[pos].is_ascii_digit() {
                a = read_num(&mut pos).unwrap_or(1);
            }
            if a == 0 {
                return Err(err(pos, "prefix subscripts must be positive"));
            }
            prefix.push(if lam {
                PrefixSymbol::Lambda(a)
            } else {
                PrefixSymbol::Rho(a)
            });
        }
        if pos >= chars.len() {
            return Err(err(pos, "missing arity bracket"));
        }
        pos += 1;
        let mut nums = [0usize; 3];
        for (idx, slot) in nums.iter_mut().enumerate() {
            *slot = read_num(&mut pos).ok_or_else(|| err(pos, "expected arity"))?;
            let sep = if idx < 2 { ',' } else { '>' };
            if chars.get(pos) != Some(&sep) {
                return Err(err(pos, "malformed arity bracket"));
            }
            pos += 1;
        }
        if pos != chars.len() {
            return Err(err(pos, "trailing input"));
        }
        if nums.contains(&0) {
            return Err(err(pos, "arity components must be positive"));
        }
        Ok(GeneratorName::new(
            PrefixWord(prefix),
            ArityTriple::new(nums[0], nums[1], nums[2]),
        ))
    }
}

/// A forward reassociation `f(gh) -> (fg)h` at `site` of `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub source: Assoc,
    pub site: Address,
}

impl Move {
    pub fn new(source: Assoc, site: Address) -> Result<Self> {
        match source.subtree_at(&site)? {
            Assoc::Node(_, r) if !r.is_leaf() => Ok(Move { source, site }),
            _ => Err(source.address_error(&site)),
        }
    }

    pub fn at_root(source: Assoc) -> Result<Self> {
        Move::new(source, Address::root())
    }

    pub fn target(&self) -> Assoc {
        apply_move(self).expect("validated at construction")
    }

    pub fn arity(&self) -> ArityTriple {
        let sub = self.source.subtree_at(&self.site).expect("validated");
        let (f, gh) = sub.children().expect("validated");
        let (g, h) = gh.children().expect("validated");
        ArityTriple::new(f.leaves(), g.leaves(), h.leaves())
    }

    /// Internal nodes whose shape the rotation changes.
    pub fn touched_nodes(&self) -> [Address; 2] {
        [self.site.clone(), self.site.child(Step::R)]
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @{} -> {}", self.source, self.site, self.target())
    }
}

fn rotate(sub: &Assoc) -> Option<Assoc> {
    let (f, gh) = sub.children()?;
    let (g, h) = gh.children()?;
    Some(Assoc::node(Assoc::node(f.clone(), g.clone()), h.clone()))
}

/// Sites of `t` where a forward reassociation applies, in preorder.
pub fn rotation_sites(t: &Assoc) -> Vec<Address> {
    t.internal_addresses()
        .into_iter()
        .filter(|a| matches!(t.subtree_at(a), Ok(Assoc::Node(_, r)) if !r.is_leaf()))
        .collect()
}

pub fn apply_move(m: &Move) -> Result<Assoc> {
    let sub = m.source.subtree_at(&m.site)?;
    let rotated = rotate(sub).ok_or_else(|| m.source.address_error(&m.site))?;
    m.source.replace_at(&m.site, rotated)
}

/// Every forward move on `n`-leaf trees, trees in enumeration order and
/// sites in preorder.
pub fn all_moves(n: usize) -> Result<Vec<Move>> {
    if n < 2 {
        return Err(Error::domain("all_moves requires n >= 2"));
    }
    let mut out = Vec::new();
    for t in enumerate_assocs(n)? {
        for site in rotation_sites(&t) {
            out.push(Move {
                source: t.clone(),
                site,
            });
        }
    }
    Ok(out)
}

/// Walk from the root to the site, recording `λ_a` when stepping right past a
/// left sibling with `a` leaves and `ρ_b` when stepping left past a right
/// sibling with `b` leaves.
pub fn classify_move(m: &Move) -> GeneratorName {
    let mut prefix = Vec::with_capacity(m.site.len());
    let mut cur = &m.source;
    for step in m.site.steps() {
        let (l, r) = cur.children().expect("validated site");
        match step {
            Step::R => {
                prefix.push(PrefixSymbol::Lambda(l.leaves()));
                cur = r;
            }
            Step::L => {
                prefix.push(PrefixSymbol::Rho(r.leaves()));
                cur = l;
            }
        }
    }
    GeneratorName::new(PrefixWord(prefix), m.arity())
}

/// Moves whose middle factor is a single letter form the maximal
/// indiscrete subgroupoid.
pub fn is_mis(m: &Move) -> bool {
    m.arity().j == 1
}

/// Two moves at the same source commute iff the node pairs they rotate are
/// disjoint.
pub fn independent(m1: &Move, m2: &Move) -> bool {
    if m1.source != m2.source || m1.site == m2.site {
        return false;
    }
    let a = m1.touched_nodes();
    let b = m2.touched_nodes();
    !a.iter().any(|x| b.contains(x))
}

/// Where a node at `addr` ends up after rotating at `site`. Only meaningful
/// for nodes outside `{site, site·R}`.
pub fn transport_address(addr: &Address, site: &Address) -> Address {
    if !site.is_prefix_of(addr) || addr.len() == site.len() {
        return addr.clone();
    }
    let rel = &addr.steps()[site.len()..];
    let mut out = site.steps().to_vec();
    match rel {
        [Step::L, rest @ ..] => {
            out.extend([Step::L, Step::L]);
            out.extend_from_slice(rest);
        }
        [Step::R, Step::L, rest @ ..] => {
            out.extend([Step::L, Step::R]);
            out.extend_from_slice(rest);
        }
        [Step::R, Step::R, rest @ ..] => {
            out.push(Step::R);
            out.extend_from_slice(rest);
        }
        // the node site·R itself is consumed by the rotation
        [Step::R] => out.push(Step::R),
        [] => unreachable!(),
    }
    Address(out)
}

/// Apply `m2` after `m1` using the transported site.
pub fn transport_move(m1: &Move, m2: &Move) -> Result<Move> {
    let after = m1.target();
    Move::new(after, transport_address(&m2.site, &m1.site))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl OrientedEdge {
    pub fn fwd(edge: usize) -> Self {
        OrientedEdge {
            edge,
            forward: true,
        }
    }

    pub fn back(edge: usize) -> Self {
        OrientedEdge {
            edge,
            forward: false,
        }
    }

    pub fn inverse(self) -> Self {
        OrientedEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub site: Address,
    pub name: GeneratorName,
    pub mis: bool,
}

/// Commuting square: `base -m1-> . -m2'-> top` and `base -m2-> . -m1'-> top`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Square {
    pub base: usize,
    pub top: usize,
    pub m1: usize,
    pub m2: usize,
    pub m1_prime: usize,
    pub m2_prime: usize,
}

impl Square {
    pub fn boundary(&self) -> [OrientedEdge; 4] {
        [
            OrientedEdge::fwd(self.m1),
            OrientedEdge::fwd(self.m2_prime),
            OrientedEdge::back(self.m1_prime),
            OrientedEdge::back(self.m2),
        ]
    }

    pub fn edges(&self) -> [usize; 4] {
        [self.m1, self.m2_prime, self.m1_prime, self.m2]
    }
}

/// Pentagon on a subtree of shape `a(b(cd))` at `site` of `source`.
/// Boundary runs along the three-edge side forward and back along the
/// two-edge side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PentagonFace {
    pub source: usize,
    pub site: Address,
    pub vertices: [usize; 5],
    pub boundary: [OrientedEdge; 5],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FillPolicy {
    Squares,
    SquaresAndPentagons,
}

impl FromStr for FillPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "squares" => Ok(FillPolicy::Squares),
            "all" | "squares+pentagons" => Ok(FillPolicy::SquaresAndPentagons),
            other => Err(Error::domain(format!("unknown fill policy '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexStats {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub squares: usize,
    pub pentagons: usize,
    pub mis_edges: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisReport {
    pub connected: bool,
    pub touches_all: bool,
    pub h1_rank: usize,
}

/// BFS tree over MIS edges. `parent[v]` is the edge used to reach `v`.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    pub root: usize,
    pub parent: Vec<Option<OrientedEdge>>,
    pub tree_edges: HashSet<usize>,
    /// Signed edge count along the tree path from the root.
    pub potential: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct TwoComplex {
    pub n: usize,
    pub vertices: Vec<Assoc>,
    pub edges: Vec<Edge>,
    pub squares: Vec<Square>,
    pub pentagons: Vec<PentagonFace>,
    index: HashMap<Assoc, usize>,
    edge_index: HashMap<(usize, Address), usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl TwoComplex {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("complex requires n >= 1"));
        }
        let vertices = enumerate_assocs(n)?;
        let index: HashMap<Assoc, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();

        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (v, t) in vertices.iter().enumerate() {
            for site in rotation_sites(t) {
                let m = Move {
                    source: t.clone(),
                    site: site.clone(),
                };
                let target = index[&m.target()];
                let id = edges.len();
                edges.push(Edge {
                    source: v,
                    target,
                    site: site.clone(),
                    name: classify_move(&m),
                    mis: is_mis(&m),
                });
                edge_index.insert((v, site), id);
                out_edges[v].push(id);
                in_edges[target].push(id);
            }
        }

        let mut cx = TwoComplex {
            n,
            vertices,
            edges,
            squares: Vec::new(),
            pentagons: Vec::new(),
            index,
            edge_index,
            out_edges,
            in_edges,
        };
        cx.squares = cx.find_squares()?;
        cx.pentagons = cx.find_pentagons();
        Ok(cx)
    }

    pub fn vertex_index(&self, t: &Assoc) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn edge_at(&self, vertex: usize, site: &Address) -> Option<usize> {
        self.edge_index.get(&(vertex, site.clone())).copied()
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn edge_move(&self, e: usize) -> Move {
        let edge = &self.edges[e];
        Move {
            source: self.vertices[edge.source].clone(),
            site: edge.site.clone(),
        }
    }

    fn find_squares(&self) -> Result<Vec<Square>> {
        let per_vertex: Vec<Result<Vec<Square>>> = (0..self.vertices.len())
            .into_par_iter()
            .map(|v| self.squares_at(v))
            .collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for batch in per_vertex {
            for sq in batch? {
                let mut key = sq.edges();
                key.sort_unstable();
                if seen.insert(key) {
                    out.push(sq);
                }
            }
        }
        Ok(out)
    }

    fn squares_at(&self, v: usize) -> Result<Vec<Square>> {
        let outs = &self.out_edges[v];
        let mut found = Vec::new();
        for (a, &e1) in outs.iter().enumerate() {
            for &e2 in &outs[a + 1..] {
                let m1 = self.edge_move(e1);
                let m2 = self.edge_move(e2);
                if !independent(&m1, &m2) {
                    continue;
                }
                let m2p = transport_move(&m1, &m2)?;
                let m1p = transport_move(&m2, &m1)?;
                let top_a = m2p.target();
                let top_b = m1p.target();
                if top_a != top_b {
                    return Err(Error::Invariant(format!(
                        "square at {} does not close: {} vs {}",
                        self.vertices[v], top_a, top_b
                    )));
                }
                let lookup = |m: &Move| -> Result<usize> {
                    let s = self.index[&m.source];
                    self.edge_at(s, &m.site).ok_or_else(|| {
                        Error::Invariant(format!("missing edge for transported move {m}"))
                    })
                };
                found.push(Square {
                    base: v,
                    top: self.index[&top_a],
                    m1: e1,
                    m2: e2,
                    m1_prime: lookup(&m1p)?,
                    m2_prime: lookup(&m2p)?,
                });
            }
        }
        Ok(found)
    }

    fn find_pentagons(&self) -> Vec<PentagonFace> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for (v, t) in self.vertices.iter().enumerate() {
            for site in t.internal_addresses() {
                let r = site.child(Step::R);
                let rr = r.child(Step::R);
                let is_pattern = matches!(t.subtree_at(&rr), Ok(Assoc::Node(..)));
                if !is_pattern {
                    continue;
                }
                // a(b(cd)) -> a((bc)d) -> (a(bc))d -> ((ab)c)d
                let e3 = self.edge_at(v, &r).expect("pattern site");
                let t3 = self.edges[e3].target;
                let e4 = self.edge_at(t3, &site).expect("pattern site");
                let t4 = self.edges[e4].target;
                let e5 = self
                    .edge_at(t4, &site.child(Step::L))
                    .expect("pattern site");
                let t5 = self.edges[e5].target;
                // a(b(cd)) -> (ab)(cd) -> ((ab)c)d
                let e1 = self.edge_at(v, &site).expect("pattern site");
                let t1 = self.edges[e1].target;
                let e2 = self.edge_at(t1, &site).expect("pattern site");
                debug_assert_eq!(self.edges[e2].target, t5);
                let vertices = [v, t3, t4, t5, t1];
                let mut key = vertices;
                key.sort_unstable();
                if seen.insert(key) {
                    out.push(PentagonFace {
                        source: v,
                        site,
                        vertices,
                        boundary: [
                            OrientedEdge::fwd(e3),
                            OrientedEdge::fwd(e4),
                            OrientedEdge::fwd(e5),
                            OrientedEdge::back(e2),
                            OrientedEdge::back(e1),
                        ],
                    });
                }
            }
        }
        out
    }

    /// Boundaries of the filled 2-cells under `fill`.
    pub fn cell_boundaries(&self, fill: FillPolicy) -> Vec<Vec<OrientedEdge>> {
        let mut cells: Vec<Vec<OrientedEdge>> =
            self.squares.iter().map(|s| s.boundary().to_vec()).collect();
        if fill == FillPolicy::SquaresAndPentagons {
            cells.extend(self.pentagons.iter().map(|p| p.boundary.to_vec()));
        }
        cells
    }

    pub fn stats(&self) -> ComplexStats {
        ComplexStats {
            n: self.n,
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            squares: self.squares.len(),
            pentagons: self.pentagons.len(),
            mis_edges: self.edges.iter().filter(|e| e.mis).count(),
        }
    }

    /// Checks that an oriented edge path is connected; returns its endpoints.
    pub fn path_endpoints(&self, path: &[OrientedEdge]) -> Result<Option<(usize, usize)>> {
        let mut ends: Option<(usize, usize)> = None;
        for oe in path {
            let e = self
                .edges
                .get(oe.edge)
                .ok_or_else(|| Error::domain(format!("edge {} out of range", oe.edge)))?;
            let (from, to) = if oe.forward {
                (e.source, e.target)
            } else {
                (e.target, e.source)
            };
            ends = match ends {
                None => Some((from, to)),
                Some((start, cur)) if cur == from => Some((start, to)),
                Some(_) => return Err(Error::domain("edge path is not connected")),
            };
        }
        Ok(ends)
    }

    /// BFS over MIS edges (both directions) from the left comb `((..(AB)..)Z)`.
    pub fn mis_spanning_tree(&self) -> SpanningTree {
        let root = self.index[&Assoc::left_comb(self.n)];
        let nv = self.vertices.len();
        let mut parent = vec![None; nv];
        let mut potential = vec![0i64; nv];
        let mut seen = vec![false; nv];
        let mut tree_edges = HashSet::new();
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            let forward = self.out_edges[v].iter().map(|&e| (e, true));
            let backward = self.in_edges[v].iter().map(|&e| (e, false));
            for (e, fwd) in forward.chain(backward) {
                let edge = &self.edges[e];
                if !edge.mis {
                    continue;
                }
                let w = if fwd { edge.target } else { edge.source };
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                parent[w] = Some(OrientedEdge {
                    edge: e,
                    forward: fwd,
                });
                potential[w] = potential[v] + if fwd { 1 } else { -1 };
                tree_edges.insert(e);
                queue.push_back(w);
            }
        }
        SpanningTree {
            root,
            parent,
            tree_edges,
            potential,
        }
    }

    /// Connectivity, coverage and first homology of the MIS subcomplex
    /// (MIS edges plus squares all of whose edges are MIS).
    pub fn mis_spanning_check(&self) -> MisReport {
        let nv = self.vertices.len();
        let tree = self.mis_spanning_tree();
        let reached = (0..nv)
            .filter(|&v| v == tree.root || tree.parent[v].is_some())
            .count();
        let connected = reached == nv;

        let mis_edges: Vec<usize> = (0..self.edges.len())
            .filter(|&e| self.edges[e].mis)
            .collect();
        let touched: HashSet<usize> = mis_edges
            .iter()
            .flat_map(|&e| [self.edges[e].source, self.edges[e].target])
            .collect();
        let touches_all = nv == 1 || touched.len() == nv;

        let col: HashMap<usize, usize> =
            mis_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let rows: Vec<Vec<(usize, i64)>> = self
            .squares
            .iter()
            .filter(|s| s.edges().iter().all(|e| self.edges[*e].mis))
            .map(|s| {
                s.boundary()
                    .iter()
                    .map(|oe| (col[&oe.edge], if oe.forward { 1 } else { -1 }))
                    .collect()
            })
            .collect();
        let rank = group::IntMatrix::from_sparse_rows(mis_edges.len(), rows).rank();
        // cycle rank of the MIS graph is E - V + components
        let components = self.component_count(|e| self.edges[e].mis);
        let cycle_rank = mis_edges.len() + components - nv;
        MisReport {
            connected,
            touches_all,
            h1_rank: cycle_rank - rank,
        }
    }

    fn component_count(&self, keep: impl Fn(usize) -> bool) -> usize {
        let nv = self.vertices.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = nv;
        for (e, edge) in self.edges.iter().enumerate() {
            if !keep(e) {
                continue;
            }
            let a = find(&mut parent, edge.source);
            let b = find(&mut parent, edge.target);
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components
    }

    /// Rank of the boundary map from filled 2-cells to edges.
    pub fn boundary_rank(&self, fill: FillPolicy) -> usize {
        let rows = self
            .cell_boundaries(fill)
            .into_iter()
            .map(|cell| {
                cell.into_iter()
                    .map(|oe| (oe.edge, if oe.forward { 1 } else { -1 }))
                    .collect()
            })
            .collect();
        group::IntMatrix::from_sparse_rows(self.edges.len(), rows).rank()
    }

    /// 1-skeleton in Graphviz format; MIS edges are drawn bold.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("digraph A{} {{\n", self.n));
        s.push_str("  node [shape=plaintext];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{v}\"];\n"));
        }
        for e in &self.edges {
            let style = if e.mis {
                "style=bold, color=blue"
            } else {
                "style=solid, color=black"
            };
            s.push_str(&format!(
                "  v{} -> v{} [label=\"{}\", {}];\n",
                e.source, e.target, e.name, style
            ));
        }
        s.push_str("}\n");
        s
    }
}

pub fn squares(n: usize) -> Result<Vec<Square>> {
    if n < 2 {
        return Err(Error::domain("squares requires n >= 2"));
    }
    Ok(TwoComplex::build(n)?.squares)
}

pub fn pentagons(n: usize) -> Result<Vec<PentagonFace>> {
    if n < 4 {
        return Err(Error::domain("pentagons requires n >= 4"));
    }
    Ok(TwoComplex::build(n)?.pentagons)
}

pub fn complex_stats(n: usize) -> Result<ComplexStats> {
    Ok(TwoComplex::build(n)?.stats())
}

pub fn mis_spanning_check(n: usize) -> Result<MisReport> {
    Ok(TwoComplex::build(n)?.mis_spanning_check())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc::Step::{L, R};

    fn t(s: &str) -> Assoc {
        Assoc::decode(s).unwrap()
    }

    fn mv(s: &str, site: Vec<Step>) -> Move {
        Move::new(t(s), Address(site)).unwrap()
    }

    #[test]
    fn apply_move_examples() {
        assert_eq!(mv("(A(BC))", vec![]).target().encode(), "((AB)C)");
        assert_eq!(mv("((AB)(CD))", vec![]).target().encode(), "(((AB)C)D)");
        assert_eq!(mv("(A(B(CD)))", vec![]).target().encode(), "((AB)(CD))");
        assert!(Move::new(t("((AB)C)"), Address::root()).is_err());
        assert!(Move::new(t("(A(BC))"), Address(vec![L])).is_err());
    }

    #[test]
    fn move_counts() {
        assert_eq!(all_moves(3).unwrap().len(), 1);
        assert_eq!(all_moves(4).unwrap().len(), 5);
        assert!(all_moves(1).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_move(&mv("((AB)(CD))", vec![])).to_string(),
            "<2,1,1>"
        );
        assert_eq!(
            classify_move(&mv("(A(B(CD)))", vec![R])).to_string(),
            "λ<1,1,1>"
        );
        assert_eq!(
            classify_move(&mv("((A(BC))D)", vec![L])).to_string(),
            "ρ<1,1,1>"
        );
        assert_eq!(
            classify_move(&mv("((A(BC))((DE)F))", vec![L])).to_string(),
            "ρ^3<1,1,1>"
        );
    }

    #[test]
    fn mis_examples() {
        assert!(is_mis(&mv("(A(B(CD)))", vec![])));
        assert!(!is_mis(&mv("(A((BC)D))", vec![])));
        assert!(is_mis(&mv("(A(B(CD)))", vec![R])));
    }

    #[test]
    fn independence_examples() {
        let a = mv("(A(B(CD)))", vec![]);
        let b = mv("(A(B(CD)))", vec![R]);
        assert!(!independent(&a, &b));
        // disjoint factors of an 8-leaf ((..)(..)) tree
        let src = "((A(B(CD)))(E(F(GH))))";
        let c = mv(src, vec![L]);
        let d = mv(src, vec![R]);
        assert!(independent(&c, &d));
        let c2 = transport_move(&c, &d).unwrap();
        let d2 = transport_move(&d, &c).unwrap();
        assert_eq!(c2.target(), d2.target());
        // outer move with an inner move deep in the right factor
        let e = mv("(A(B(C(DE))))", vec![]);
        let f = mv("(A(B(C(DE))))", vec![R, R]);
        assert!(independent(&e, &f));
        assert_eq!(
            transport_move(&e, &f).unwrap().target(),
            transport_move(&f, &e).unwrap().target()
        );
        assert!(!independent(&e, &e));
    }

    #[test]
    fn small_complexes() {
        let s3 = complex_stats(3).unwrap();
        assert_eq!(
            (
                s3.vertices,
                s3.edges,
                s3.squares,
                s3.pentagons,
                s3.mis_edges
            ),
            (2, 1, 0, 0, 1)
        );
        let s4 = complex_stats(4).unwrap();
        assert_eq!(
            (
                s4.vertices,
                s4.edges,
                s4.squares,
                s4.pentagons,
                s4.mis_edges
            ),
            (5, 5, 0, 1, 4)
        );
        assert!(pentagons(3).is_err());
    }

    #[test]
    fn generator_name_parse_roundtrip() {
        for s in ["<1,2,1>", "λ^2ρ<1,2,1>", "ρλ^2<4,2,1>", "λλ<1,3,1>"] {
            let g: GeneratorName = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        let ascii: GeneratorName = "l2r<1,2,1>".parse().unwrap();
        assert_eq!(ascii.to_string(), "λ^2ρ<1,2,1>");
        assert!("λ<1,2>".parse::<GeneratorName>().is_err());
        assert!("x<1,2,1>".parse::<GeneratorName>().is_err());
    }

    #[test]
    fn triples_in_table_order() {
        let names: Vec<String> = ArityTriple::all_of_weight(6)
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(
            names,
            [
                "<1,4,1>", "<1,3,2>", "<2,3,1>", "<1,2,3>", "<2,2,2>", "<3,2,1>", "<1,1,4>",
                "<2,1,3>", "<3,1,2>", "<4,1,1>"
            ]
        );
    }
}
