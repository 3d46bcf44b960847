//! Fixpoint rewriting of presentations.
//!
//! One round: single-letter relators kill their generator, two-letter
//! relators in distinct generators merge them (the representative is the
//! least label), every relator is rewritten and reduced, trivial and
//! duplicate relators go. The optional Tietze move drops a generator that
//! occurs exactly once in the whole relator set along with its relator.

use std::collections::HashSet;

use super::{GenStatus, Letter, Presentation, Relator, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SimplifyOptions {
    pub tietze: bool,
}

struct Classes {
    /// `parent[g] = (p, inv)` means `g = p` or `g = p⁻¹`.
    parent: Vec<(usize, bool)>,
    killed: Vec<bool>,
}

impl Classes {
    fn find(&mut self, g: usize) -> (usize, bool) {
        let (p, inv) = self.parent[g];
        if p == g {
            return (g, false);
        }
        let (root, inv2) = self.find(p);
        let total = inv ^ inv2;
        self.parent[g] = (root, total);
        (root, total)
    }

    /// Current value of a letter: `None` if it is the identity.
    fn rewrite(&mut self, l: Letter) -> Option<Letter> {
        let (root, inv) = self.find(l.gen);
        if self.killed[root] {
            None
        } else {
            Some(Letter {
                gen: root,
                inverse: l.inverse ^ inv,
            })
        }
    }

    fn rewrite_word(&mut self, w: &Word) -> Word {
        let letters: Vec<Letter> = w
            .letters()
            .iter()
            .filter_map(|&l| self.rewrite(l))
            .collect();
        Word::new(letters).cyclically_reduced()
    }
}

pub fn simplify(p: &Presentation, opts: SimplifyOptions) -> Presentation {
    let ng = p.generators.len();
    let mut cl = Classes {
        parent: (0..ng).map(|g| (g, false)).collect(),
        killed: vec![false; ng],
    };
    let mut out = p.clone();
    // Start from the current statuses so that simplifying twice is stable.
    for g in 0..ng {
        match &p.generators[g].status {
            GenStatus::Live | GenStatus::Eliminated { .. } => {}
            GenStatus::Killed => cl.killed[g] = true,
            GenStatus::MergedInto { target, inverse } => cl.parent[g] = (*target, *inverse),
        }
    }
    let mut eliminated: Vec<Option<Word>> = p
        .generators
        .iter()
        .map(|g| match &g.status {
            GenStatus::Eliminated { word } => Some(word.clone()),
            _ => None,
        })
        .collect();
    let mut relators: Vec<Relator> = p.relators.clone();

    loop {
        let mut changed = false;
        for r in &relators {
            let w = cl.rewrite_word(&r.word);
            match w.letters() {
                [l] => {
                    cl.killed[l.gen] = true;
                    changed = true;
                }
                [a, b] if a.gen != b.gen => {
                    // a^s b^t = e  gives  a = b^(-t·s)
                    let inv = !(a.inverse ^ b.inverse);
                    let (keep, drop) =
                        if p.generators[a.gen].label.key() <= p.generators[b.gen].label.key() {
                            (a.gen, b.gen)
                        } else {
                            (b.gen, a.gen)
                        };
                    cl.parent[drop] = (keep, inv);
                    if cl.killed[drop] {
                        cl.killed[keep] = true;
                    }
                    changed = true;
                }
                _ => {}
            }
        }

        relators = reduce_relators(&mut cl, &relators);

        if !changed && opts.tietze {
            if let Some((g, idx)) = tietze_candidate(p, &relators) {
                let r = relators.remove(idx).word;
                eliminated[g] = Some(solve_for(&r, g));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    for (g, elim) in eliminated.iter_mut().enumerate() {
        let (root, inv) = cl.find(g);
        out.generators[g].status = if let Some(w) = elim.take() {
            GenStatus::Eliminated { word: w }
        } else if cl.killed[root] {
            GenStatus::Killed
        } else if root == g {
            GenStatus::Live
        } else {
            GenStatus::MergedInto {
                target: root,
                inverse: inv,
            }
        };
    }
    out.relators = relators;
    out
}

fn reduce_relators(cl: &mut Classes, relators: &[Relator]) -> Vec<Relator> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in relators {
        let w = cl.rewrite_word(&r.word);
        if w.is_empty() {
            continue;
        }
        if seen.insert(w.relator_normal_form()) {
            out.push(Relator {
                word: w,
                kind: r.kind,
            });
        }
    }
    out
}

/// Generator of largest label occurring exactly once overall.
fn tietze_candidate(p: &Presentation, relators: &[Relator]) -> Option<(usize, usize)> {
    let mut count = vec![0usize; p.generators.len()];
    let mut home = vec![0usize; p.generators.len()];
    for (i, r) in relators.iter().enumerate() {
        for l in r.word.letters() {
            count[l.gen] += 1;
            home[l.gen] = i;
        }
    }
    (0..p.generators.len())
        .filter(|&g| count[g] == 1)
        .max_by(|&a, &b| {
            p.generators[a]
                .label
                .key()
                .cmp(&p.generators[b].label.key())
        })
        .map(|g| (g, home[g]))
}

/// Solves `r = e` for the single occurrence of `g`.
fn solve_for(r: &Word, g: usize) -> Word {
    let letters = r.letters();
    let pos = letters
        .iter()
        .position(|l| l.gen == g)
        .expect("generator occurs");
    let rest: Word = letters[pos + 1..]
        .iter()
        .chain(&letters[..pos])
        .copied()
        .collect();
    // g^ε · rest = e
    if letters[pos].inverse {
        rest
    } else {
        rest.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::GeneratorName;
    use crate::presentation::{GenLabel, Provenance, RelatorKind};

    fn pres(names: &[&str], rels: &[Vec<(usize, bool)>]) -> Presentation {
        let mut p = Presentation::new(0, Provenance::Scheme);
        for n in names {
            p.add_generator(GenLabel::Name {
                name: n.parse::<GeneratorName>().unwrap(),
            });
        }
        for r in rels {
            let w = Word::new(r.iter().map(|&(g, inverse)| Letter { gen: g, inverse }));
            p.add_relator(w, RelatorKind::Inherited);
        }
        p
    }

    #[test]
    fn kills_and_cascades() {
        // a = e, a b c^-1 = e  leaves b = c
        let p = pres(
            &["<1,1,1>", "<1,2,1>", "<2,1,1>"],
            &[vec![(0, false)], vec![(0, false), (1, false), (2, true)]],
        );
        let s = simplify(&p, SimplifyOptions::default());
        assert_eq!(s.generators[0].status, GenStatus::Killed);
        assert_eq!(s.live_generators(), vec![1]);
        assert!(s.relators.is_empty());
        assert_eq!(
            s.generators[2].status,
            GenStatus::MergedInto {
                target: 1,
                inverse: false
            }
        );
    }

    #[test]
    fn merge_keeps_least_label_and_sign() {
        // λ<1,2,1> · <1,2,1> = e  gives λ<1,2,1> = <1,2,1>^-1
        let p = pres(&["λ<1,2,1>", "<1,2,1>"], &[vec![(0, false), (1, false)]]);
        let s = simplify(&p, SimplifyOptions::default());
        assert_eq!(
            s.generators[0].status,
            GenStatus::MergedInto {
                target: 1,
                inverse: true
            }
        );
        assert_eq!(s.image(0), Word::new([Letter::neg(1)]));
    }

    #[test]
    fn tietze_removes_lonely_generator() {
        // t x t^-1 y^-1: x and y both occur once; y is dropped
        let p = pres(
            &["<1,4,1>", "ρλ<1,2,1>", "λρ<1,2,1>"],
            &[vec![(0, false), (1, false), (0, true), (2, true)]],
        );
        let s = simplify(&p, SimplifyOptions::default());
        assert_eq!(s.relators.len(), 1);
        let t = simplify(&p, SimplifyOptions { tietze: true });
        assert!(t.relators.is_empty());
        assert_eq!(t.live_count(), 2);
        assert!(matches!(
            t.generators[1].status,
            GenStatus::Eliminated { .. }
        ));
        // ρλ<1,2,1> = <1,4,1>^-1 λρ<1,2,1> <1,4,1>
        assert_eq!(
            t.image(1),
            Word::new([Letter::neg(0), Letter::pos(2), Letter::pos(0)])
        );
    }

    #[test]
    fn torsion_relator_survives() {
        let p = pres(&["<1,2,1>"], &[vec![(0, false), (0, false)]]);
        let s = simplify(&p, SimplifyOptions { tietze: true });
        assert_eq!(s.relators.len(), 1);
    }

    #[test]
    fn idempotent() {
        let p = pres(
            &["<1,1,1>", "<1,2,1>", "<2,1,1>", "<1,1,2>"],
            &[
                vec![(0, false)],
                vec![(1, false), (2, false)],
                vec![(1, false), (3, false), (1, true), (3, true)],
            ],
        );
        let s = simplify(&p, SimplifyOptions::default());
        let s2 = simplify(&s, SimplifyOptions::default());
        assert_eq!(s, s2);
    }
}
