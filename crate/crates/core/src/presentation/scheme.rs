//! Inductive presentations of `π(A_n)` built from the smaller groupoids.
//!
//! Old generators of level `n` are prefixed copies `λ_a # G_{n-a}` and
//! `ρ_b # G_{n-b}`; new generators are the bare classes `<i,j,k>` with
//! `i + j + k = n`. Relators: conjugation by each new class (three
//! families), triviality of the MIS classes, prefixed lower relators and
//! commutation of left and right prefixed generators.
//!
//! Two listings are offered. `Literal` keeps every raw prefixed word, so
//! `λ_1 λ_1 x` and `λ_2 x` are separate generators. `Tables` prefixes only
//! the surviving representatives of the simplified lower level (from
//! [`E_PROGENY_SUPPRESSED_FROM`] on) and resolves every name in a relator
//! through the lower identifications, which is how the printed tables of
//! `G_3 .. G_7` are laid out.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use itertools::Itertools;

use super::{
    simplify, GenLabel, GenStatus, Letter, Presentation, Provenance, RelatorKind, SimplifyOptions,
    Word,
};
use crate::complex::{ArityTriple, GeneratorName, PrefixSymbol, PrefixWord};
use crate::error::{Error, Result};
use crate::group::{freeness_verdict, FreenessVerdict};

/// First level at which prefixed copies of trivial lower generators are
/// left out of the `Tables` listing. The `G_4` table still shows
/// `λ<1,1,1>` and `ρ<1,1,1>`.
pub const E_PROGENY_SUPPRESSED_FROM: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Listing {
    Tables,
    Literal,
}

/// Column `A_left × A_right` of a generator table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub left: usize,
    pub right: usize,
    pub entries: Vec<GeneratorName>,
}

#[derive(Debug, Clone)]
pub struct SchemeLevel {
    pub n: usize,
    pub listing: Listing,
    pub columns: Vec<Column>,
    pub new: Vec<GeneratorName>,
    pub raw: Presentation,
    /// Kills and merges applied, no Tietze moves.
    pub simplified: Presentation,
    /// For inherited relators: the prefix and the level they come from.
    pub origins: Vec<Option<(PrefixSymbol, usize)>>,
    index: HashMap<GeneratorName, usize>,
}

impl SchemeLevel {
    pub fn old_count(&self) -> usize {
        self.columns.iter().map(|c| c.entries.len()).sum()
    }

    pub fn new_count(&self) -> usize {
        self.new.len()
    }

    pub fn index_of(&self, name: &GeneratorName) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Surviving representatives in listing order. A merged class takes
    /// the place of its first listed member and the name of its
    /// representative.
    pub fn live_names(&self) -> Vec<GeneratorName> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.raw.generators.len() {
            if let [l] = self.simplified.image(g).letters() {
                let name = self.simplified.generators[l.gen].label.name().clone();
                if seen.insert(name.clone()) {
                    out.push(name);
                }
            }
        }
        out
    }

    /// Whether two listed names end up in one class (up to inversion).
    pub fn same_class(&self, a: &GeneratorName, b: &GeneratorName) -> bool {
        let (Some(ia), Some(ib)) = (self.index_of(a), self.index_of(b)) else {
            return false;
        };
        let wa = self.simplified.image(ia);
        let wb = self.simplified.image(ib);
        !wa.is_empty() && (wa == wb || wa == wb.inverse())
    }

    fn is_suppressed(&self) -> bool {
        self.listing == Listing::Tables && self.n >= E_PROGENY_SUPPRESSED_FROM
    }

    /// Names used when this level is prefixed into a larger one.
    fn exported_names(&self, larger: usize) -> Vec<GeneratorName> {
        if self.listing == Listing::Tables && larger >= E_PROGENY_SUPPRESSED_FROM {
            self.live_names()
        } else {
            self.raw
                .generators
                .iter()
                .map(|g| g.label.name().clone())
                .collect()
        }
    }

    /// Relators handed up to larger levels.
    fn exported_relators(&self, larger: usize) -> &Presentation {
        if self.listing == Listing::Tables && larger >= E_PROGENY_SUPPRESSED_FROM {
            &self.simplified
        } else {
            &self.raw
        }
    }

    /// Generator table and relator list laid out like the printed tables:
    /// old generators by column, new ones in rows of equal middle arity,
    /// relators in sections (conjugations, amalgamations grouped by their
    /// trivial conjugator, trivial generators, inherited relators grouped
    /// by origin, commutators). Relators that simplify to an isolated
    /// commutator are starred. In the `Tables` listing, prefixed copies of
    /// trivial generators are not listed as relators.
    pub fn table_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "G_{}: {} generators ({} old + {} new)",
            self.n,
            self.old_count() + self.new_count(),
            self.old_count(),
            self.new_count()
        );
        for c in &self.columns {
            let names: Vec<String> = c.entries.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "A{} x A{}: {}", c.left, c.right, names.join(", "));
        }
        for (_, row) in &self.new.iter().chunk_by(|t| t.arity.j) {
            let names: Vec<String> = row.map(ToString::to_string).collect();
            let _ = writeln!(s, "new: {}", names.join(", "));
        }
        let sections = self.relator_sections();
        let listed: usize = sections
            .iter()
            .flatten()
            .filter(|l| !l.ends_with(':'))
            .count();
        let _ = writeln!(s, "R_{}: {} relators", self.n, listed);
        for (i, sec) in sections.iter().enumerate() {
            if i > 0 {
                s.push_str("--\n");
            }
            for line in sec {
                let _ = writeln!(s, "{line}");
            }
        }
        s
    }

    fn relator_sections(&self) -> Vec<Vec<String>> {
        let p = &self.raw;
        let starred = self.starred_relators();
        let mut conj = Vec::new();
        let mut amalg: Vec<(usize, Vec<String>)> = Vec::new();
        let mut kills = Vec::new();
        let mut inherited: Vec<(String, Vec<String>)> = Vec::new();
        let mut comm = Vec::new();
        for (idx, r) in p.relators.iter().enumerate() {
            let l = r.word.letters();
            match r.kind {
                RelatorKind::ConjugateRho
                | RelatorKind::ConjugateMixed
                | RelatorKind::ConjugateLambda => {
                    let t = l[0].gen;
                    if l.len() == 4 && self.simplified.generators[t].status == GenStatus::Killed {
                        let line = format!(
                            "{} = {}",
                            p.format_letter(l[1]),
                            p.format_letter(l[3].inv())
                        );
                        match amalg.iter_mut().find(|(g, _)| *g == t) {
                            Some((_, v)) => v.push(line),
                            None => amalg.push((t, vec![line])),
                        }
                    } else {
                        let star = if starred.contains(&idx) { "*** " } else { "" };
                        conj.push(format!("{star}{}", p.format_equation(&r.word)));
                    }
                }
                RelatorKind::MisTrivial => kills.push(p.format_equation(&r.word)),
                RelatorKind::Inherited => {
                    if self.listing == Listing::Tables && l.len() == 1 {
                        continue;
                    }
                    let header = match self.origins[idx] {
                        Some((sym, m)) => format!("{sym} # R_{m}:"),
                        None => "inherited:".to_string(),
                    };
                    let line = p.format_equation(&r.word);
                    match inherited.iter_mut().find(|(h, _)| *h == header) {
                        Some((_, v)) => v.push(line),
                        None => inherited.push((header, vec![line])),
                    }
                }
                RelatorKind::Commutator => comm.push(format!(
                    "{} * {} = {} * {}",
                    p.format_letter(l[0]),
                    p.format_letter(l[1]),
                    p.format_letter(l[1]),
                    p.format_letter(l[0])
                )),
                RelatorKind::Square | RelatorKind::Pentagon => {
                    conj.push(p.format_equation(&r.word))
                }
            }
        }
        let mut sections = Vec::new();
        if !conj.is_empty() {
            sections.push(conj);
        }
        if !amalg.is_empty() {
            let mut sec = Vec::new();
            for (t, lines) in amalg {
                sec.push(format!("{}:", p.generators[t].label));
                sec.extend(lines.into_iter().map(|l| format!("  {l}")));
            }
            sections.push(sec);
        }
        if !kills.is_empty() {
            sections.push(kills);
        }
        if !inherited.is_empty() {
            let mut sec = Vec::new();
            for (h, lines) in inherited {
                sec.push(h);
                sec.extend(lines.into_iter().map(|l| format!("  {l}")));
            }
            sections.push(sec);
        }
        if !comm.is_empty() {
            sections.push(comm);
        }
        sections
    }

    /// Raw relators whose simplified form is an isolated commutator.
    fn starred_relators(&self) -> HashSet<usize> {
        let FreenessVerdict::NonFree { witnesses } = freeness_verdict(&self.simplified) else {
            return HashSet::new();
        };
        let pairs: HashSet<[String; 2]> = witnesses
            .into_iter()
            .map(|w| {
                let mut g = w.generators;
                g.sort();
                g
            })
            .collect();
        let mut out = HashSet::new();
        for (idx, r) in self.raw.relators.iter().enumerate() {
            let w = r
                .word
                .substitute(|l| {
                    let im = self.simplified.image(l.gen);
                    Some(if l.inverse { im.inverse() } else { im })
                })
                .cyclically_reduced();
            let mut gens: Vec<String> = w
                .letters()
                .iter()
                .map(|l| self.simplified.generator_label(l.gen))
                .collect();
            gens.sort();
            gens.dedup();
            if w.len() == 4
                && gens.len() == 2
                && pairs.contains(&[gens[0].clone(), gens[1].clone()])
            {
                out.insert(idx);
            }
        }
        out
    }
}

struct Builder<'a> {
    n: usize,
    listing: Listing,
    lower: &'a [SchemeLevel],
}

impl Builder<'_> {
    fn level(&self, m: usize) -> &SchemeLevel {
        &self.lower[m - 1]
    }

    fn source(&self, m: usize) -> Vec<GeneratorName> {
        if m == 0 {
            return Vec::new();
        }
        self.level(m).exported_names(self.n)
    }

    /// Listed name at level `n` for a raw name, with a sign, or `None` if
    /// it is trivial.
    fn resolve_lower(&self, name: &GeneratorName) -> Option<(GeneratorName, bool)> {
        if self.listing == Listing::Literal || self.n < E_PROGENY_SUPPRESSED_FROM {
            return Some((name.clone(), false));
        }
        resolve_lower_at(self.lower, self.n, name)
    }
}

fn resolve_lower_at(
    levels: &[SchemeLevel],
    n: usize,
    name: &GeneratorName,
) -> Option<(GeneratorName, bool)> {
    let Some((&sym, rest)) = name.prefix.0.split_first() else {
        return Some((name.clone(), false));
    };
    let rest = GeneratorName::new(PrefixWord(rest.to_vec()), name.arity);
    let (rep, inv) = resolve_full_at(levels, n - sym.skipped(), &rest)?;
    Some((rep.prepend(sym), inv))
}

/// Representative of a name after the identifications made at level `m`.
fn resolve_full_at(
    levels: &[SchemeLevel],
    m: usize,
    name: &GeneratorName,
) -> Option<(GeneratorName, bool)> {
    let level = &levels[m - 1];
    let (listed, inv) = if level.is_suppressed() {
        resolve_lower_at(levels, m, name)?
    } else {
        (name.clone(), false)
    };
    let idx = level
        .index_of(&listed)
        .unwrap_or_else(|| panic!("{listed} is not listed at level {m}"));
    let image = level.simplified.image(idx);
    match image.letters() {
        [] => None,
        [l] => Some((
            level.simplified.generators[l.gen].label.name().clone(),
            inv ^ l.inverse,
        )),
        _ => unreachable!("scheme levels are simplified without Tietze moves"),
    }
}

fn build_level(n: usize, listing: Listing, lower: &[SchemeLevel]) -> SchemeLevel {
    let b = Builder { n, listing, lower };
    let provenance = match listing {
        Listing::Tables => Provenance::Scheme,
        Listing::Literal => Provenance::SchemeLiteral,
    };
    let mut raw = Presentation::new(n, provenance);
    let mut index: HashMap<GeneratorName, usize> = HashMap::new();
    let mut push = |raw: &mut Presentation, name: GeneratorName| {
        index
            .entry(name)
            .or_insert_with_key(|name| raw.add_generator(GenLabel::Name { name: name.clone() }));
    };

    let mut columns = Vec::new();
    for a in 1..n {
        let rb = n - a;
        let mut entries = Vec::new();
        for x in b.source(rb) {
            entries.push(x.prepend(PrefixSymbol::Lambda(a)));
        }
        for x in b.source(a) {
            entries.push(x.prepend(PrefixSymbol::Rho(rb)));
        }
        for e in &entries {
            push(&mut raw, e.clone());
        }
        columns.push(Column {
            left: a,
            right: rb,
            entries,
        });
    }
    let triples = if n >= 3 {
        ArityTriple::all_of_weight(n)
    } else {
        Vec::new()
    };
    let new: Vec<GeneratorName> = triples
        .iter()
        .map(|t| GeneratorName::new(PrefixWord::empty(), *t))
        .collect();
    for t in &new {
        push(&mut raw, t.clone());
    }

    let letter = |name: &GeneratorName, inverse: bool| -> Option<Letter> {
        let (rep, inv) = b.resolve_lower(name)?;
        let gen = *index
            .get(&rep)
            .unwrap_or_else(|| panic!("{rep} is not listed at level {n}"));
        Some(Letter {
            gen,
            inverse: inverse ^ inv,
        })
    };
    let word = |parts: &[(&GeneratorName, bool)]| -> Word {
        Word::new(parts.iter().filter_map(|(nm, inv)| letter(nm, *inv)))
    };
    use PrefixSymbol::{Lambda, Rho};
    let pre = |syms: &[PrefixSymbol], x: &GeneratorName| -> GeneratorName {
        syms.iter().rev().fold(x.clone(), |acc, s| acc.prepend(*s))
    };

    let mut relators: Vec<PendingRelator> = Vec::new();
    for t in &triples {
        let (i, j, k) = (t.i, t.j, t.k);
        let tn = GeneratorName::new(PrefixWord::empty(), *t);
        for x in b.source(i) {
            let w = word(&[
                (&tn, false),
                (&pre(&[Rho(k), Rho(j)], &x), false),
                (&tn, true),
                (&pre(&[Rho(j + k)], &x), true),
            ]);
            relators.push((w, RelatorKind::ConjugateRho, None));
        }
        for y in b.source(j) {
            let w = word(&[
                (&tn, false),
                (&pre(&[Rho(k), Lambda(i)], &y), false),
                (&tn, true),
                (&pre(&[Lambda(i), Rho(k)], &y), true),
            ]);
            relators.push((w, RelatorKind::ConjugateMixed, None));
        }
        for z in b.source(k) {
            let w = word(&[
                (&tn, false),
                (&pre(&[Lambda(i + j)], &z), false),
                (&tn, true),
                (&pre(&[Lambda(i), Lambda(j)], &z), true),
            ]);
            relators.push((w, RelatorKind::ConjugateLambda, None));
        }
    }
    for t in triples.iter().filter(|t| t.j == 1) {
        let tn = GeneratorName::new(PrefixWord::empty(), *t);
        relators.push((word(&[(&tn, false)]), RelatorKind::MisTrivial, None));
    }
    for a in 1..n {
        let rb = n - a;
        for (sym, m) in [(Lambda(a), rb), (Rho(rb), a)] {
            let src = b.level(m).exported_relators(n);
            for r in &src.relators {
                let parts: Vec<(GeneratorName, bool)> = r
                    .word
                    .letters()
                    .iter()
                    .map(|l| (src.generators[l.gen].label.name().prepend(sym), l.inverse))
                    .collect();
                let refs: Vec<(&GeneratorName, bool)> =
                    parts.iter().map(|(nm, inv)| (nm, *inv)).collect();
                relators.push((word(&refs), RelatorKind::Inherited, Some((sym, m))));
            }
        }
    }
    for i in 1..n {
        for x in b.source(i) {
            for y in b.source(n - i) {
                let rx = pre(&[Rho(n - i)], &x);
                let ly = pre(&[Lambda(i)], &y);
                let w = word(&[(&rx, false), (&ly, false), (&rx, true), (&ly, true)]);
                relators.push((w, RelatorKind::Commutator, None));
            }
        }
    }
    let mut origins = Vec::new();
    for (w, kind, origin) in relators {
        if !w.is_empty() {
            raw.add_relator(w, kind);
            origins.push(origin);
        }
    }

    let simplified = simplify(&raw, SimplifyOptions::default());
    SchemeLevel {
        n,
        listing,
        columns,
        new,
        raw,
        simplified,
        origins,
        index,
    }
}

/// Levels `1..=n`; entry `m - 1` is level `m`.
/// Relator with the inherited prefix it was exported under, if any.
type PendingRelator = (Word, RelatorKind, Option<(PrefixSymbol, usize)>);

pub fn scheme_levels(n: usize, listing: Listing) -> Result<Vec<SchemeLevel>> {
    if n == 0 {
        return Err(Error::domain("scheme requires n >= 1"));
    }
    let mut levels: Vec<SchemeLevel> = Vec::with_capacity(n);
    for m in 1..=n {
        let level = build_level(m, listing, &levels);
        levels.push(level);
    }
    Ok(levels)
}

/// Presentation of `π(A_n)` from the scheme; raw or simplified (with
/// Tietze moves when `simplified` is set).
pub fn scheme_presentation(n: usize, listing: Listing, simplified: bool) -> Result<Presentation> {
    let levels = scheme_levels(n, listing)?;
    let top = levels.last().expect("n >= 1");
    Ok(if simplified {
        simplify(&top.raw, SimplifyOptions { tietze: true })
    } else {
        top.raw.clone()
    })
}
