//! Free-group words over generator indices.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A word in the free group; kept freely reduced by every constructor.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Strips cancelling letters from the two ends (conjugation).
    pub fn cyclically_reduced(&self) -> Word {
        let v = &self.0;
        let (mut lo, mut hi) = (0, v.len());
        while hi - lo >= 2 && v[lo].cancels(v[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(v[lo..hi].to_vec())
    }

    /// Least cyclic rotation of the word or of its inverse. Two relators
    /// with the same normal form define the same normal subgroup.
    pub fn relator_normal_form(&self) -> Word {
        let w = self.cyclically_reduced();
        if w.is_empty() {
            return w;
        }
        let inv = w.inverse();
        let mut best: Option<Vec<Letter>> = None;
        for base in [&w.0, &inv.0] {
            for r in 0..base.len() {
                let rot: Vec<Letter> = base[r..].iter().chain(&base[..r]).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Word(best.unwrap_or_default())
    }

    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    /// Replaces every letter by a word; `None` maps the letter to the identity.
    pub fn substitute(&self, mut f: impl FnMut(Letter) -> Option<Word>) -> Word {
        let mut out = Vec::new();
        for &l in &self.0 {
            if let Some(w) = f(l) {
                out.extend_from_slice(&w.0);
            }
        }
        Word::new(out)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::new(iter)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("g{}^-1", l.gen)
                } else {
                    format!("g{}", l.gen)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
