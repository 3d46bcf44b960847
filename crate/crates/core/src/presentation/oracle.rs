//! Presentation read off the complex: generators are the edges outside a
//! spanning tree of MIS edges, relators the boundaries of filled cells.

use std::collections::HashMap;

use super::{
    simplify, GenLabel, Letter, Presentation, Provenance, RelatorKind, SimplifyOptions, Word,
};
use crate::complex::{FillPolicy, TwoComplex};
use crate::error::{Error, Result};

/// Unsimplified oracle presentation of an already built complex.
pub fn oracle_raw(cx: &TwoComplex, fill: FillPolicy) -> Result<Presentation> {
    let tree = cx.mis_spanning_tree();
    if (0..cx.vertices.len()).any(|v| v != tree.root && tree.parent[v].is_none()) {
        return Err(Error::Invariant(format!(
            "MIS edges do not connect A_{}",
            cx.n
        )));
    }
    let mut p = Presentation::new(cx.n, Provenance::Oracle);
    let mut gen_of: HashMap<usize, usize> = HashMap::new();
    for (e, edge) in cx.edges.iter().enumerate() {
        if !tree.tree_edges.contains(&e) {
            let g = p.add_generator(GenLabel::Edge {
                index: e,
                name: edge.name.clone(),
            });
            gen_of.insert(e, g);
        }
    }
    let mut cells: Vec<(Vec<_>, RelatorKind)> = cx
        .squares
        .iter()
        .map(|s| (s.boundary().to_vec(), RelatorKind::Square))
        .collect();
    if fill == FillPolicy::SquaresAndPentagons {
        cells.extend(
            cx.pentagons
                .iter()
                .map(|f| (f.boundary.to_vec(), RelatorKind::Pentagon)),
        );
    }
    for (boundary, kind) in cells {
        let w: Word = boundary
            .iter()
            .filter_map(|oe| {
                gen_of.get(&oe.edge).map(|&g| Letter {
                    gen: g,
                    inverse: !oe.forward,
                })
            })
            .collect();
        p.add_relator(w, kind);
    }
    Ok(p)
}

/// Simplified (including Tietze moves) presentation of `π(A_n)` with the
/// given cells filled.
pub fn presentation_from_complex(n: usize, fill: FillPolicy) -> Result<Presentation> {
    let cx = TwoComplex::build(n)?;
    let raw = oracle_raw(&cx, fill)?;
    Ok(simplify(&raw, SimplifyOptions { tietze: true }))
}
