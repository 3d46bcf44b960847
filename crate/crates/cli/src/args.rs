use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

pub const DEFAULT_MAX_N: usize = 7;
pub const MAX_N_ENV: &str = "ASSOC_COHERENCE_MAX_N";

#[derive(Debug, Parser)]
#[command(
    name = "assoc-coherence",
    version,
    about = "Reassociation groupoids, their presentations and coherence obstructions"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest letter count accepted (at most 10).
    #[arg(long, global = true, env = MAX_N_ENV, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fill {
    Squares,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListingArg {
    Tables,
    Literal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every bracketing of n letters.
    Trees { n: usize },

    /// Counts or DOT drawing of the reassociation complex.
    #[command(group(ArgGroup::new("view").args(["stats", "dot"])))]
    Complex {
        n: usize,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        dot: bool,
    },

    /// Group presentation from the generator scheme or from the complex.
    #[command(group(ArgGroup::new("source").args(["scheme", "oracle"])))]
    #[command(group(ArgGroup::new("stage").args(["raw", "simplified"])))]
    Presentation {
        n: usize,
        #[arg(long)]
        scheme: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        simplified: bool,
        /// Also eliminate generators that occur once in a single relator.
        #[arg(long, conflicts_with = "raw")]
        tietze: bool,
        #[arg(long, value_enum, default_value_t = ListingArg::Tables)]
        listing: ListingArg,
        /// Cells filled in the oracle complex.
        #[arg(long, value_enum, default_value_t = Fill::Squares)]
        fill: Fill,
    },

    /// First homology of the complex.
    Homology {
        n: usize,
        #[arg(long, value_enum, default_value_t = Fill::Squares)]
        fill: Fill,
    },

    /// Scalar images of the generators for a cyclic zeta.
    Coherence {
        /// Multiplicative order of zeta, or `infinite`.
        #[arg(long)]
        zeta_order: String,
        #[arg(long = "n")]
        n: usize,
    },

    /// Graft bracketings into the letters of another.
    Graft {
        f: String,
        gs: Vec<String>,
        /// Also graft the move of `f` at this site (e.g. `[R]` or `RL`).
        #[arg(long)]
        site: Option<String>,
    },
}
