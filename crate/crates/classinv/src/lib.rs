//! Command-line front end: corpus files, report formats, and the
//! `eval`, `verify`, `discover` and `table` commands.

pub mod commands;
pub mod failure;
pub mod output;

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use classinv_core::verify::Suite;

use commands::{DiscoverTarget, EvalArgs, EvalKind, Outcome, TableKind};
use failure::Failure;
use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "classinv",
    version,
    about = "Class invariants, singular moduli and theta products to high precision"
)]
pub struct Cli {
    /// Decimal digits to report (default: $CLASSINV_DIGITS or 60)
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Corpus file replacing the built-in one
    #[arg(long, global = true)]
    pub corpus: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an invariant or q-series at a point
    Eval {
        #[arg(long, value_enum)]
        kind: EvalKind,
        /// Rational index, e.g. 46 or 23/2
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        m: Option<String>,
        /// Series argument
        #[arg(long)]
        q: Option<String>,
        /// Elliptic modulus
        #[arg(long)]
        k: Option<String>,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
    },
    /// Search for integer relations or minimal polynomials
    Discover(DiscoverArgs),
    /// Tabulate corpus closed forms with their values
    Table {
        #[arg(long, value_enum, default_value = "all")]
        kind: TableKind,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["pq", "extended", "minpoly", "values"])))]
pub struct DiscoverArgs {
    /// Recover the integer relation among Q^16, P^4 Q^14, P^4 Q^2, P^8
    #[arg(long, alias = "thm31")]
    pub pq: bool,
    /// All relations among P^(4i) Q^(2j), i <= 4, j <= 8
    #[arg(long)]
    pub extended: bool,
    /// Minimal polynomial of a value (h4, G46, g46, alpha14, sqrt2, pi or a radical expression)
    #[arg(long)]
    pub minpoly: Option<String>,
    /// Integer relation among comma-separated values
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<String>>,
    /// Evaluation points q for the P-Q searches
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<String>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    #[arg(long)]
    pub max_norm: Option<String>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: classinv_core::Error| e.to_string())
}

/// Run a parsed command line. Output is returned, not printed, unless
/// `--out` directs it to a file.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let digits = commands::resolve_digits(cli.digits)?;
    let outcome = match &cli.command {
        Command::Eval { kind, n, m, q, k } => {
            let args = EvalArgs {
                kind: *kind,
                n: n.as_deref(),
                m: m.as_deref(),
                q: q.as_deref(),
                k: k.as_deref(),
            };
            commands::eval(&args, digits)?
        }
        Command::Verify { suite } => {
            let corpus = commands::load_corpus(cli.corpus.as_deref())?;
            commands::verify(*suite, digits, &corpus, cli.format)?
        }
        Command::Discover(d) => {
            let target = if d.pq {
                DiscoverTarget::PqRelation { qs: &d.q }
            } else if d.extended {
                DiscoverTarget::ExtendedPq { qs: &d.q }
            } else if let Some(v) = &d.minpoly {
                DiscoverTarget::MinPoly {
                    value: v,
                    n: d.n.as_deref(),
                    max_degree: d.max_degree,
                }
            } else {
                let values = d.values.as_deref().unwrap_or_default();
                DiscoverTarget::Values {
                    values,
                    max_norm: d.max_norm.as_deref(),
                }
            };
            commands::discover(&target, digits)?
        }
        Command::Table { kind } => {
            let corpus = commands::load_corpus(cli.corpus.as_deref())?;
            commands::table(*kind, digits, &corpus, cli.format)?
        }
    };
    match commands::write_output(&outcome.output, cli.out.as_ref())? {
        Some(text) => Ok(Outcome {
            output: text,
            status: outcome.status,
        }),
        None => Ok(Outcome {
            output: String::new(),
            status: outcome.status,
        }),
    }
}
