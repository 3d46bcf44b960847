//! Group presentations of the edge-path groupoid, the rewriting that
//! simplifies them, and the two ways of producing them: the inductive
//! naming scheme and the spanning-tree oracle over the complex.

mod oracle;
mod scheme;
mod simplify;
mod word;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::GeneratorName;

pub use oracle::{oracle_raw, presentation_from_complex};
pub use scheme::{
    scheme_levels, scheme_presentation, Column, Listing, SchemeLevel, E_PROGENY_SUPPRESSED_FROM,
};
pub use simplify::{simplify, SimplifyOptions};
pub use word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Inductive scheme, names listed as in the printed tables.
    Scheme,
    /// Inductive scheme with every raw prefixed name kept.
    SchemeLiteral,
    /// Spanning tree and filled cells of the complex.
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Scheme => "scheme",
            Provenance::SchemeLiteral => "scheme_literal",
            Provenance::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenLabel {
    Name {
        name: GeneratorName,
    },
    /// A non-tree edge of the complex, tagged with its naturality class.
    Edge {
        index: usize,
        name: GeneratorName,
    },
}

impl GenLabel {
    pub fn name(&self) -> &GeneratorName {
        match self {
            GenLabel::Name { name } | GenLabel::Edge { name, .. } => name,
        }
    }

    /// Representatives of merged classes are chosen by least key.
    pub fn key(&self) -> (&GeneratorName, usize) {
        match self {
            GenLabel::Name { name } => (name, 0),
            GenLabel::Edge { index, name } => (name, *index),
        }
    }
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::Name { name } => write!(f, "{name}"),
            GenLabel::Edge { index, name } => write!(f, "{name}#{index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GenStatus {
    Live,
    Killed,
    MergedInto {
        target: usize,
        inverse: bool,
    },
    /// Removed together with the only relator mentioning it; equals `word`.
    Eliminated {
        word: Word,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: GenLabel,
    pub status: GenStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelatorKind {
    /// `T ρ_k ρ_j x T⁻¹ = ρ_{j+k} x`
    ConjugateRho,
    /// `T ρ_k λ_i y T⁻¹ = λ_i ρ_k y`
    ConjugateMixed,
    /// `T λ_{i+j} z T⁻¹ = λ_i λ_j z`
    ConjugateLambda,
    /// `<i,1,k> = e`
    MisTrivial,
    /// Prefixed relator of a smaller groupoid.
    Inherited,
    /// `ρ x` and `λ y` commute.
    Commutator,
    Square,
    Pentagon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub word: Word,
    pub kind: RelatorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub n: usize,
    pub provenance: Provenance,
    pub generators: Vec<Generator>,
    pub relators: Vec<Relator>,
}

/// Wire form: live generator labels and relators as `(label, ±1)` lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub n: usize,
    pub provenance: Provenance,
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(String, i32)>>,
}

impl Presentation {
    pub fn new(n: usize, provenance: Provenance) -> Self {
        Presentation {
            n,
            provenance,
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    pub fn add_generator(&mut self, label: GenLabel) -> usize {
        self.generators.push(Generator {
            label,
            status: GenStatus::Live,
        });
        self.generators.len() - 1
    }

    pub fn add_relator(&mut self, word: Word, kind: RelatorKind) {
        self.relators.push(Relator { word, kind });
    }

    pub fn live_generators(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&g| self.generators[g].status == GenStatus::Live)
            .collect()
    }

    pub fn live_count(&self) -> usize {
        self.generators
            .iter()
            .filter(|g| g.status == GenStatus::Live)
            .count()
    }

    pub fn count_status(&self, pred: impl Fn(&GenStatus) -> bool) -> usize {
        self.generators.iter().filter(|g| pred(&g.status)).count()
    }

    pub fn generator_label(&self, g: usize) -> String {
        self.generators[g].label.to_string()
    }

    pub fn index_by_name(&self) -> HashMap<GeneratorName, usize> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.label.name().clone(), i))
            .collect()
    }

    /// What a generator equals in terms of live generators.
    pub fn image(&self, g: usize) -> Word {
        match &self.generators[g].status {
            GenStatus::Live => Word::new([Letter::pos(g)]),
            GenStatus::Killed => Word::empty(),
            GenStatus::MergedInto { target, inverse } => {
                let w = self.image(*target);
                if *inverse {
                    w.inverse()
                } else {
                    w
                }
            }
            GenStatus::Eliminated { word } => word.substitute(|l| {
                let w = self.image(l.gen);
                Some(if l.inverse { w.inverse() } else { w })
            }),
        }
    }

    pub fn format_letter(&self, l: Letter) -> String {
        if l.inverse {
            format!("{}^-1", self.generators[l.gen].label)
        } else {
            self.generators[l.gen].label.to_string()
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        w.letters()
            .iter()
            .map(|&l| self.format_letter(l))
            .collect::<Vec<_>>()
            .join(" * ")
    }

    /// Renders a relator as an equation, moving a trailing inverse letter
    /// to the right-hand side.
    pub fn format_equation(&self, w: &Word) -> String {
        let letters = w.letters();
        match letters.split_last() {
            Some((&last, rest)) if !rest.is_empty() && last.inverse => {
                let lhs = Word::new(rest.iter().copied());
                format!(
                    "{} = {}",
                    self.format_word(&lhs),
                    self.format_letter(last.inv())
                )
            }
            _ => format!("{} = e", self.format_word(w)),
        }
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            n: self.n,
            provenance: self.provenance,
            generators: self
                .live_generators()
                .into_iter()
                .map(|g| self.generator_label(g))
                .collect(),
            relators: self
                .relators
                .iter()
                .map(|r| {
                    r.word
                        .letters()
                        .iter()
                        .map(|l| (self.generator_label(l.gen), l.exponent()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let live = self.live_generators();
        let mut s = format!(
            "n = {} ({}): {} generators, {} relators\n",
            self.n,
            self.provenance,
            live.len(),
            self.relators.len()
        );
        s.push_str("generators:\n");
        for g in live {
            s.push_str(&format!("  {}\n", self.generators[g].label));
        }
        s.push_str("relators:\n");
        for r in &self.relators {
            s.push_str(&format!("  {}\n", self.format_equation(&r.word)));
        }
        s
    }
}
