use assoc_coherence::complex::{FillPolicy, Move, TwoComplex};
use assoc_coherence::group::{
    abelian_invariants, freeness_verdict, AbelianInvariants, FreenessVerdict,
};
use assoc_coherence::operad::{arity_monotonicity, graft_move, Monotonicity};
use assoc_coherence::presentation::{
    oracle_raw, scheme_levels, simplify, Listing, Presentation, PresentationJson, SimplifyOptions,
};
use assoc_coherence::scalar::{coherence_report, ScalarModel};
use assoc_coherence::{enumerate_assocs, graft_object, Address, Assoc, Error, HARD_MAX_N};
use serde::Serialize;
use thiserror::Error;

use crate::args::{Cli, Command, Fill, Format, ListingArg};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    /// 2 for anything the caller can fix, 3 for broken internal invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Invariant(_)) | CliError::Output(_) => 3,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Output(e.to_string()))
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let out = || -> std::result::Result<String, Box<dyn std::error::Error>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    };
    out().map_err(|e| CliError::Output(e.to_string()))
}

fn unsupported(cmd: &str, format: Format) -> CliError {
    usage(format!("{cmd} has no {format:?} output").to_lowercase())
}

fn check_n(n: usize, max_n: usize) -> Result<()> {
    if max_n > HARD_MAX_N {
        return Err(usage(format!(
            "max_n {max_n} exceeds the hard cap {HARD_MAX_N}"
        )));
    }
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    if n > HARD_MAX_N {
        return Err(usage(format!("n = {n} exceeds the hard cap {HARD_MAX_N}")));
    }
    if n > max_n {
        return Err(usage(format!(
            "n = {n} exceeds max_n {max_n} (raise with --max-n, at most {HARD_MAX_N})"
        )));
    }
    Ok(())
}

fn fill_policy(f: Fill) -> FillPolicy {
    match f {
        Fill::Squares => FillPolicy::Squares,
        Fill::All => FillPolicy::SquaresAndPentagons,
    }
}

fn fill_name(f: Fill) -> &'static str {
    match f {
        Fill::Squares => "squares",
        Fill::All => "all",
    }
}

pub fn run(cli: &Cli) -> Result<String> {
    let fmt = cli.format;
    match &cli.command {
        Command::Trees { n } => {
            check_n(*n, cli.max_n)?;
            trees(*n, fmt)
        }
        Command::Complex { n, dot, .. } => {
            check_n(*n, cli.max_n)?;
            complex(*n, *dot || fmt == Format::Dot, fmt)
        }
        Command::Presentation {
            n,
            oracle,
            raw,
            tietze,
            listing,
            fill,
            ..
        } => {
            check_n(*n, cli.max_n)?;
            let stage = match (*raw, *tietze) {
                (true, _) => Stage::Raw,
                (false, false) => Stage::Simplified,
                (false, true) => Stage::Tietze,
            };
            let listing = match listing {
                ListingArg::Tables => Listing::Tables,
                ListingArg::Literal => Listing::Literal,
            };
            let source = if *oracle {
                Source::Oracle(*fill)
            } else {
                Source::Scheme(listing)
            };
            presentation(*n, source, stage, fmt)
        }
        Command::Homology { n, fill } => {
            check_n(*n, cli.max_n)?;
            homology(*n, *fill, fmt)
        }
        Command::Coherence { zeta_order, n } => {
            check_n(*n, cli.max_n)?;
            coherence(zeta_order, *n, fmt)
        }
        Command::Graft { f, gs, site } => graft(f, gs, site.as_deref(), fmt),
    }
}

#[derive(Serialize)]
struct TreesOut {
    n: usize,
    count: usize,
    trees: Vec<String>,
}

fn trees(n: usize, fmt: Format) -> Result<String> {
    let trees: Vec<String> = enumerate_assocs(n)?.iter().map(Assoc::encode).collect();
    match fmt {
        Format::Text => Ok(trees.iter().map(|t| format!("{t}\n")).collect()),
        Format::Json => json(&TreesOut {
            n,
            count: trees.len(),
            trees,
        }),
        Format::Csv => csv_rows(
            &["index", "encoding"],
            trees
                .iter()
                .enumerate()
                .map(|(i, t)| [i.to_string(), t.clone()]),
        ),
        Format::Dot => Err(unsupported("trees", fmt)),
    }
}

fn complex(n: usize, dot: bool, fmt: Format) -> Result<String> {
    let cx = TwoComplex::build(n)?;
    if dot {
        if !matches!(fmt, Format::Text | Format::Dot) {
            return Err(usage("--dot writes DOT only"));
        }
        return Ok(cx.to_dot());
    }
    let s = cx.stats();
    match fmt {
        Format::Text => Ok(format!(
            "n: {}\nvertices: {}\nedges: {}\nsquares: {}\npentagons: {}\nmis_edges: {}\n",
            s.n, s.vertices, s.edges, s.squares, s.pentagons, s.mis_edges
        )),
        Format::Json => json(&s),
        Format::Csv => csv_rows(
            &[
                "n",
                "vertices",
                "edges",
                "squares",
                "pentagons",
                "mis_edges",
            ],
            [[
                s.n,
                s.vertices,
                s.edges,
                s.squares,
                s.pentagons,
                s.mis_edges,
            ]
            .map(|x| x.to_string())],
        ),
        Format::Dot => unreachable!("handled above"),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Stage {
    Raw,
    Simplified,
    Tietze,
}

#[derive(Clone, Copy)]
enum Source {
    Scheme(Listing),
    Oracle(Fill),
}

#[derive(Serialize)]
struct PresentationOut {
    #[serde(flatten)]
    presentation: PresentationJson,
    stage: Stage,
    generator_count: usize,
    relator_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    old_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    new_count: Option<usize>,
    abelianization: AbelianInvariants,
    verdict: FreenessVerdict,
}

fn verdict_text(v: &FreenessVerdict) -> String {
    match v {
        FreenessVerdict::Free { rank } => format!("free of rank {rank}"),
        FreenessVerdict::NonFree { witnesses } => {
            let ws: Vec<String> = witnesses
                .iter()
                .map(|w| format!("[{}, {}]", w.generators[0], w.generators[1]))
                .collect();
            format!("not free; isolated commutators {}", ws.join(" "))
        }
        FreenessVerdict::Unknown => "undecided".to_string(),
    }
}

fn presentation(n: usize, source: Source, stage: Stage, fmt: Format) -> Result<String> {
    let tietze = SimplifyOptions { tietze: true };
    let (p, table, counts): (Presentation, Option<String>, Option<(usize, usize)>) = match source {
        Source::Scheme(listing) => {
            let levels = scheme_levels(n, listing)?;
            let level = &levels[n - 1];
            match stage {
                Stage::Raw => (
                    level.raw.clone(),
                    Some(level.table_text()),
                    Some((level.old_count(), level.new_count())),
                ),
                Stage::Simplified => (level.simplified.clone(), None, None),
                Stage::Tietze => (simplify(&level.simplified, tietze), None, None),
            }
        }
        Source::Oracle(fill) => {
            let cx = TwoComplex::build(n)?;
            let raw = oracle_raw(&cx, fill_policy(fill))?;
            let p = match stage {
                Stage::Raw => raw,
                Stage::Simplified => simplify(&raw, SimplifyOptions::default()),
                Stage::Tietze => simplify(&raw, tietze),
            };
            (p, None, None)
        }
    };
    let inv = abelian_invariants(&p);
    let verdict = freeness_verdict(&p);
    match fmt {
        Format::Text => {
            if let Some(t) = table {
                return Ok(t);
            }
            let mut s = p.to_text();
            s.push_str(&format!("abelianization: {inv}\n"));
            s.push_str(&format!("abelian rank: {}\n", inv.free_rank));
            s.push_str(&format!("verdict: {}\n", verdict_text(&verdict)));
            Ok(s)
        }
        Format::Json => json(&PresentationOut {
            presentation: p.to_json(),
            stage,
            generator_count: p.live_count(),
            relator_count: p.relators.len(),
            old_count: counts.map(|c| c.0),
            new_count: counts.map(|c| c.1),
            abelianization: inv,
            verdict,
        }),
        Format::Csv => {
            let gens = p
                .live_generators()
                .into_iter()
                .enumerate()
                .map(|(i, g)| ["generator".to_string(), i.to_string(), p.generator_label(g)]);
            let rels = p.relators.iter().enumerate().map(|(i, r)| {
                [
                    "relator".to_string(),
                    i.to_string(),
                    p.format_equation(&r.word),
                ]
            });
            csv_rows(&["kind", "index", "value"], gens.chain(rels))
        }
        Format::Dot => Err(unsupported("presentation", fmt)),
    }
}

#[derive(Serialize)]
struct HomologyOut {
    n: usize,
    fill: &'static str,
    vertices: usize,
    edges: usize,
    cells: usize,
    boundary_rank: usize,
    free_rank: usize,
    torsion: Vec<String>,
}

fn homology(n: usize, fill: Fill, fmt: Format) -> Result<String> {
    let cx = TwoComplex::build(n)?;
    let policy = fill_policy(fill);
    let raw = oracle_raw(&cx, policy)?;
    let inv = abelian_invariants(&simplify(&raw, SimplifyOptions { tietze: true }));
    let out = HomologyOut {
        n,
        fill: fill_name(fill),
        vertices: cx.vertices.len(),
        edges: cx.edges.len(),
        cells: cx.cell_boundaries(policy).len(),
        boundary_rank: cx.boundary_rank(policy),
        free_rank: inv.free_rank,
        torsion: inv.torsion.clone(),
    };
    match fmt {
        Format::Text => Ok(format!(
            "H_1(A_{n}; fill = {}) = {inv}\nrank: {}\n",
            out.fill, out.free_rank
        )),
        Format::Json => json(&out),
        Format::Csv => csv_rows(
            &["n", "fill", "free_rank", "torsion"],
            [[
                n.to_string(),
                out.fill.to_string(),
                out.free_rank.to_string(),
                out.torsion.join(" "),
            ]],
        ),
        Format::Dot => Err(unsupported("homology", fmt)),
    }
}

fn parse_zeta(s: &str) -> Result<ScalarModel> {
    match s {
        "infinite" | "inf" => Ok(ScalarModel::infinite()),
        _ => {
            let m: u64 = s.parse().map_err(|_| {
                usage(format!(
                    "zeta order must be a positive integer or 'infinite', got '{s}'"
                ))
            })?;
            Ok(ScalarModel::cyclic(m)?)
        }
    }
}

fn coherence(zeta: &str, n: usize, fmt: Format) -> Result<String> {
    let model = parse_zeta(zeta)?;
    let r = coherence_report(n, model)?;
    match fmt {
        Format::Text => {
            let zeta = r
                .zeta_order
                .map_or_else(|| "infinite".to_string(), |m| m.to_string());
            let coherent = r
                .generator_exponents
                .iter()
                .all(|g| g.order == assoc_coherence::scalar::Order::Finite(1));
            let mut s = format!(
                "n: {}\nzeta order: {zeta}\npentagon order: {}\nimage order: {}\ncoherent: {}\n",
                r.n,
                r.pentagon_order,
                r.image_order,
                if coherent { "yes" } else { "no" }
            );
            s.push_str("generator exponents:\n");
            for g in &r.generator_exponents {
                s.push_str(&format!(
                    "  {}: {} (order {})\n",
                    g.generator, g.exponent, g.order
                ));
            }
            Ok(s)
        }
        Format::Json => json(&r),
        Format::Csv => csv_rows(
            &["generator", "exponent", "order"],
            r.generator_exponents.iter().map(|g| {
                [
                    g.generator.clone(),
                    g.exponent.to_string(),
                    g.order.to_string(),
                ]
            }),
        ),
        Format::Dot => Err(unsupported("coherence", fmt)),
    }
}

#[derive(Serialize)]
struct GraftedMove {
    site: String,
    grafted_site: String,
    #[serde(flatten)]
    arity: Monotonicity,
}

#[derive(Serialize)]
struct GraftOut {
    f: String,
    gs: Vec<String>,
    result: String,
    leaves: usize,
    #[serde(rename = "move", skip_serializing_if = "Option::is_none")]
    mv: Option<GraftedMove>,
}

fn graft(f: &str, gs: &[String], site: Option<&str>, fmt: Format) -> Result<String> {
    let f = Assoc::decode_shape(f)?;
    let gs: Vec<Assoc> = gs
        .iter()
        .map(|g| Assoc::decode_shape(g))
        .collect::<assoc_coherence::Result<_>>()?;
    if gs.len() != f.leaves() {
        return Err(usage(format!(
            "{} has {} letters but {} bracketings were given",
            f.encode(),
            f.leaves(),
            gs.len()
        )));
    }
    let result = graft_object(&f, &gs)?;
    let mv = match site {
        None => None,
        Some(s) => {
            let addr: Address = s.parse()?;
            let m = Move::new(f.clone(), addr.clone())?;
            let grafted = graft_move(&m, &gs)?;
            Some(GraftedMove {
                site: addr.to_string(),
                grafted_site: grafted.site.to_string(),
                arity: arity_monotonicity(&m, &gs)?,
            })
        }
    };
    let out = GraftOut {
        f: f.encode(),
        gs: gs.iter().map(Assoc::encode).collect(),
        result: result.encode(),
        leaves: result.leaves(),
        mv,
    };
    match fmt {
        Format::Text => {
            let mut s = format!("{}\nleaves: {}\n", out.result, out.leaves);
            if let Some(m) = &out.mv {
                s.push_str(&format!(
                    "move at {}: {} -> {} at {}{}\n",
                    m.site,
                    m.arity.before,
                    m.arity.after,
                    m.grafted_site,
                    if m.arity.monotone {
                        ""
                    } else {
                        " (not monotone)"
                    }
                ));
            }
            Ok(s)
        }
        Format::Json => json(&out),
        Format::Csv => csv_rows(
            &["result", "leaves"],
            [[out.result.clone(), out.leaves.to_string()]],
        ),
        Format::Dot => Err(unsupported("graft", fmt)),
    }
}
