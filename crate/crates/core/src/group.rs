//! Integer linear algebra over presentations: exponent-sum matrices, Smith
//! normal form, abelian invariants and a narrow freeness test.
//!
//! Elimination runs in two phases. Unit pivots are removed first on a
//! sparse representation (boundary and relator matrices are mostly `±1`
//! entries), then whatever is left is reduced densely. All arithmetic is
//! arbitrary precision.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::presentation::{Presentation, Word};

type SparseRow = BTreeMap<usize, BigInt>;

/// Integer matrix stored as sparse rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            ncols,
            rows: vec![SparseRow::new(); nrows],
        }
    }

    /// Rows given as `(column, value)` pairs; repeated columns are summed.
    pub fn from_sparse_rows(ncols: usize, rows: Vec<Vec<(usize, i64)>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|entries| {
                let mut row = SparseRow::new();
                for (c, v) in entries {
                    assert!(c < ncols, "column {c} out of range");
                    *row.entry(c).or_insert_with(BigInt::zero) += v;
                }
                row.retain(|_, v| !v.is_zero());
                row
            })
            .collect();
        IntMatrix { ncols, rows }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let sparse = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged matrix");
                r.iter().enumerate().map(|(c, &v)| (c, v)).collect()
            })
            .collect();
        Self::from_sparse_rows(ncols, sparse)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.rows[r].get(&c).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn to_dense_i64(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![0i64; self.ncols];
                for (&c, v) in row {
                    d[c] = v.to_i64().expect("entry fits in i64");
                }
                d
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    /// Reorders rows and columns: new row `i` is old row `row_perm[i]`,
    /// new column `j` is old column `col_perm[j]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        assert_eq!(row_perm.len(), self.nrows());
        assert_eq!(col_perm.len(), self.ncols);
        let mut inv = vec![0; self.ncols];
        for (new, &old) in col_perm.iter().enumerate() {
            inv[old] = new;
        }
        let rows = row_perm
            .iter()
            .map(|&r| {
                self.rows[r]
                    .iter()
                    .map(|(&c, v)| (inv[c], v.clone()))
                    .collect()
            })
            .collect();
        IntMatrix {
            ncols: self.ncols,
            rows,
        }
    }

    pub fn smith_normal_form(&self) -> SmithForm {
        smith(self)
    }

    pub fn rank(&self) -> usize {
        self.smith_normal_form().rank
    }
}

/// Nonzero diagonal of the Smith normal form, each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub rank: usize,
}

fn smith(m: &IntMatrix) -> SmithForm {
    let mut rows: Vec<Option<SparseRow>> = m.rows.iter().cloned().map(Some).collect();
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); m.ncols];
    for (r, row) in m.rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut units = 0usize;

    // Phase 1: unit pivots, cheapest fill-in first.
    while let Some((pr, pc)) = pick_unit_pivot(&rows, &col_rows) {
        let pivot_row = rows[pr].take().expect("live pivot row");
        let u = pivot_row[&pc].clone();
        for &c in pivot_row.keys() {
            col_rows[c].remove(&pr);
        }
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            let row = rows[r].as_mut().expect("live row");
            let factor = &row[&pc] * &u;
            for (&c, v) in &pivot_row {
                let entry = row.entry(c).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    col_rows[c].insert(r);
                }
            }
        }
        debug_assert!(col_rows[pc].is_empty());
        units += 1;
    }

    // Phase 2: dense reduction of the remainder.
    let live: Vec<SparseRow> = rows
        .into_iter()
        .flatten()
        .filter(|r| !r.is_empty())
        .collect();
    let cols: Vec<usize> = {
        let mut s: Vec<usize> = live.iter().flat_map(|r| r.keys().copied()).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let mut dense: Vec<Vec<BigInt>> = live
        .iter()
        .map(|r| {
            cols.iter()
                .map(|c| r.get(c).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    let mut diag = dense_smith(&mut dense);
    let mut invariants = vec![BigInt::one(); units];
    invariants.append(&mut diag);
    let invariants = normalize_chain(invariants);
    let rank = invariants.len();
    SmithForm { invariants, rank }
}

fn pick_unit_pivot(
    rows: &[Option<SparseRow>],
    col_rows: &[HashSet<usize>],
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (r, row) in rows.iter().enumerate() {
        let Some(row) = row else { continue };
        if row.is_empty() {
            continue;
        }
        let rl = row.len() - 1;
        if let Some((cost, _, _)) = best {
            if rl == 0 && cost == 0 {
                break;
            }
        }
        for (&c, v) in row {
            if v.abs().is_one() {
                let cost = rl * (col_rows[c].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, r, c));
                    if cost == 0 {
                        return Some((r, c));
                    }
                }
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// Diagonalizes in place; returns the nonzero diagonal entries (absolute values).
fn dense_smith(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            // clear column t
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot = a[t].clone();
                for (x, p) in a[i][t..].iter_mut().zip(&pivot[t..]) {
                    *x -= &q * p;
                }
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            // clear row t
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if done {
                // divisibility of the trailing block
                let mut bad = None;
                'outer: for i in t + 1..nr {
                    for j in t + 1..nc {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        let src = a[i].clone();
                        for (x, v) in a[t][t..].iter_mut().zip(&src[t..]) {
                            *x += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..nr {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..nc {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Rewrites a list of nonzero diagonal entries into the divisibility chain
/// `d_1 | d_2 | ...` of the same abelian group.
fn normalize_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Free rank plus torsion coefficients `t_1 | t_2 | ...`, each `> 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free_abelian(&self, rank: usize) -> bool {
        self.free_rank == rank && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Exponent-sum matrix: rows are relators, columns the live generators in
/// presentation order.
pub fn abelianize(p: &Presentation) -> IntMatrix {
    let live = p.live_generators();
    let col: std::collections::HashMap<usize, usize> =
        live.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let rows = p
        .relators
        .iter()
        .map(|r| {
            r.word
                .letters()
                .iter()
                .map(|l| {
                    let c = *col
                        .get(&l.gen)
                        .unwrap_or_else(|| panic!("relator uses non-live generator {}", l.gen));
                    (c, if l.inverse { -1 } else { 1 })
                })
                .collect()
        })
        .collect();
    IntMatrix::from_sparse_rows(live.len(), rows)
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    m.smith_normal_form()
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let m = abelianize(p);
    invariants_of(&m)
}

/// Invariants of `Z^ncols / rowspace(m)`.
pub fn invariants_of(m: &IntMatrix) -> AbelianInvariants {
    let snf = m.smith_normal_form();
    AbelianInvariants {
        free_rank: m.ncols() - snf.rank,
        torsion: snf
            .invariants
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_string())
            .collect(),
    }
}

pub fn equivalent_abelianization(p1: &Presentation, p2: &Presentation) -> bool {
    abelian_invariants(p1) == abelian_invariants(p2)
}

/// A relator `[a, b]` whose generators occur in no other relator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorWitness {
    pub generators: [String; 2],
    pub relator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FreenessVerdict {
    Free {
        rank: usize,
    },
    /// Each witness spans a `Z × Z` free factor.
    NonFree {
        witnesses: Vec<CommutatorWitness>,
    },
    Unknown,
}

/// `Free` when no relators remain; `NonFree` when some relator is a
/// commutator of two generators that occur in no other relator; otherwise
/// `Unknown`. Expects a simplified presentation.
pub fn freeness_verdict(p: &Presentation) -> FreenessVerdict {
    if p.relators.is_empty() {
        return FreenessVerdict::Free {
            rank: p.live_generators().len(),
        };
    }
    let mut witnesses = Vec::new();
    for (idx, r) in p.relators.iter().enumerate() {
        let Some((a, b)) = commutator_pair(&r.word) else {
            continue;
        };
        let elsewhere = p.relators.iter().enumerate().any(|(j, other)| {
            j != idx
                && other
                    .word
                    .letters()
                    .iter()
                    .any(|l| l.gen == a || l.gen == b)
        });
        if !elsewhere {
            witnesses.push(CommutatorWitness {
                generators: [p.generator_label(a), p.generator_label(b)],
                relator: p.format_equation(&r.word),
            });
        }
    }
    if witnesses.is_empty() {
        FreenessVerdict::Unknown
    } else {
        FreenessVerdict::NonFree { witnesses }
    }
}

/// `Some((a, b))` if the cyclic word is `a^±1 b^±1 a^∓1 b^∓1` with `a != b`.
fn commutator_pair(w: &Word) -> Option<(usize, usize)> {
    let l = w.letters();
    if l.len() != 4 {
        return None;
    }
    let (a, b) = (l[0], l[1]);
    if a.gen == b.gen {
        return None;
    }
    let ok = l[2].gen == a.gen
        && l[2].inverse != a.inverse
        && l[3].gen == b.gen
        && l[3].inverse != b.inverse;
    ok.then_some((a.gen.min(b.gen), a.gen.max(b.gen)))
}
