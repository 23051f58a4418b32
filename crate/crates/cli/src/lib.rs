//! Command-line front end for the `hochtrace` engine.

pub mod input;
pub mod output;
pub mod run;

use clap::{Parser, Subcommand, ValueEnum};

use hochtrace::ring::BaseRing;

pub use run::{run, Command, Format, JobConfig, RunOutput};

#[derive(Debug, Parser)]
#[command(name = "hochtrace", version, about = "Exact Hochschild homology, Dennis trace and Waldhausen K_0 computations")]
pub struct Cli {
    /// Highest degree computed.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,
    /// Base ring: Z, Q, Zmod:m or GF:p. Overrides the ring named by the input.
    #[arg(long, global = true)]
    pub ring: Option<BaseRing>,
    /// Size bound for category families that do not state one.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
    /// Seed for the random inputs of `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Algebra,
    Group,
    Category,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Hochschild homology HH_0..HH_max.
    Hh { algebra: String },
    /// Cyclic homology over Q via the (b, B) bicomplex.
    Hc { algebra: String },
    /// Group homology H_*(BG) from the bar complex (default ring Z).
    GroupHomology { group: String },
    /// Dennis trace of an invertible matrix, e.g. "[1+x]" or "[1, x; 0, 1]".
    TraceK1 { algebra: String, matrix: String },
    /// Dennis trace H_d(BGL_n(A)) -> HH_d(A) on homology.
    TraceHomology {
        algebra: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Multitrace maps HH_d(M_n(A)) -> HH_d(A) with an isomorphism verdict.
    Morita {
        algebra: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// K_0 by the S-construction and by generators and relations.
    K0 { category: String },
    /// Checks the axioms of an algebra, group or category.
    Validate {
        input: String,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Runs every property suite.
    Selftest,
}

impl From<Cli> for JobConfig {
    fn from(cli: Cli) -> Self {
        let command = match cli.command {
            Cmd::Hh { algebra } => Command::Hh { algebra },
            Cmd::Hc { algebra } => Command::Hc { algebra },
            Cmd::GroupHomology { group } => Command::GroupHomology { group },
            Cmd::TraceK1 { algebra, matrix } => Command::TraceK1 { algebra, matrix },
            Cmd::TraceHomology { algebra, n } => Command::TraceHomology { algebra, n },
            Cmd::Morita { algebra, n } => Command::Morita { algebra, n },
            Cmd::K0 { category } => Command::K0 { category },
            Cmd::Validate { input, kind } => Command::Validate {
                input,
                kind: kind.map(|k| match k {
                    KindArg::Algebra => input::InputKind::Algebra,
                    KindArg::Group => input::InputKind::Group,
                    KindArg::Category => input::InputKind::Category,
                }),
            },
            Cmd::Selftest => Command::Selftest,
        };
        JobConfig {
            command,
            max_degree: cli.max_degree,
            ring: cli.ring,
            bound: cli.bound,
            format: match cli.format {
                FormatArg::Table => Format::Table,
                FormatArg::Structured => Format::Structured,
            },
            seed: cli.seed,
        }
    }
}
