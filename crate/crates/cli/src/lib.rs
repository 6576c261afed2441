//! Batch front end for `fuzzyq-core`: JSON configuration, CSV time series,
//! a small expression language for quantified patterns, and the `eval`,
//! `slide`, `summarize` and `rate-search` commands.

pub mod commands;
pub mod config;
pub mod data;
pub mod dsl;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fuzzyq_core::summarizer::{DEFAULT_MARGIN, DEFAULT_RATE_STEP, DEFAULT_TAU, DEFAULT_TAU_MERGE};

use crate::commands::{Context, EvalArgs, RateSearchArgs, SlideArgs, SummarizeArgs};
use crate::config::Config;
use crate::data::load_csv;
use crate::error::CliError;
use crate::output::Format;

pub use crate::dsl::{parse_expression, parse_term, Expression, ParseError, Term};
pub use crate::error::ExitKind;

#[derive(Debug, Parser)]
#[command(name = "fuzzyq", version, about = "Evaluate fuzzy quantified statements over CSV data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Shared {
    /// JSON configuration document.
    #[arg(long)]
    pub config: PathBuf,
    /// CSV input with a header row.
    #[arg(long)]
    pub data: PathBuf,
    /// Fuzzification method: md, i, a/exact, a/dp, a/mc:SAMPLES:SEED, a
    /// JSON descriptor, or a name from the config.
    #[arg(long, default_value = "a/dp")]
    pub method: String,
    /// Output path, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one expression over the whole data set or at one instant.
    Eval {
        #[command(flatten)]
        shared: Shared,
        /// Expression text or the name of a configured expression.
        #[arg(long)]
        expr: String,
        /// Evaluate the windowed pattern at this instant instead.
        #[arg(long)]
        at: Option<String>,
    },
    /// Slide a windowed pattern along the time axis.
    Slide {
        #[command(flatten)]
        shared: Shared,
        /// Expression text or the name of a configured expression.
        #[arg(long)]
        expr: String,
        /// Add a `degree > theta` flag column; may be repeated.
        #[arg(long = "theta")]
        thetas: Vec<f64>,
        /// First instant (default: start of the data).
        #[arg(long)]
        from: Option<String>,
        /// Last instant (default: end of the data).
        #[arg(long)]
        to: Option<String>,
    },
    /// Build the evaluation matrix of a column and summarize it.
    Summarize {
        #[command(flatten)]
        shared: Shared,
        /// CSV column to summarize.
        #[arg(long)]
        column: String,
        /// Linguistic variable from the config.
        #[arg(long)]
        variable: String,
        /// Quantifier partition from the config.
        #[arg(long)]
        partition: String,
        /// Minimum degree of a reported statement.
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f64,
        /// Required lead of a statement over its runner-up.
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: f64,
        /// Merge adjacent partition quantifiers whose degrees reach --tau-merge.
        #[arg(long)]
        merge: bool,
        #[arg(long, default_value_t = DEFAULT_TAU_MERGE)]
        tau_merge: f64,
        /// Keep statements on the bottom partition quantifier.
        #[arg(long)]
        no_suppress_bottom: bool,
        /// Report the single best statement only.
        #[arg(long)]
        best_only: bool,
    },
    /// Find the rate interval [h, h + delta] that best fits X2 within X1.
    RateSearch {
        #[command(flatten)]
        shared: Shared,
        /// Restriction term, e.g. `temp is hot`.
        #[arg(long)]
        x1: String,
        /// Scope term, e.g. `humidity is high`.
        #[arg(long)]
        x2: String,
        /// Interval width.
        #[arg(long, default_value_t = 0.2)]
        delta_max: f64,
        /// Grid spacing of the left end.
        #[arg(long, default_value_t = DEFAULT_RATE_STEP)]
        step: f64,
    },
}

impl Command {
    fn shared(&self) -> &Shared {
        match self {
            Command::Eval { shared, .. }
            | Command::Slide { shared, .. }
            | Command::Summarize { shared, .. }
            | Command::RateSearch { shared, .. } => shared,
        }
    }
}

/// Runs a parsed command and returns the rendered result.
pub fn execute(cmd: &Command) -> Result<String, CliError> {
    let shared = cmd.shared();
    let config = Config::load(&shared.config)?;
    let method = config.method(&shared.method)?;
    let data = load_csv(&shared.data, config.time.column.as_deref())?;
    let ctx = Context {
        config: &config,
        data: &data,
        method,
        format: shared.format,
    };
    match cmd {
        Command::Eval { expr, at, .. } => commands::eval(
            &ctx,
            &EvalArgs {
                expr: expr.clone(),
                at: at.clone(),
            },
        ),
        Command::Slide {
            expr, thetas, from, to, ..
        } => commands::slide(
            &ctx,
            &SlideArgs {
                expr: expr.clone(),
                thetas: thetas.clone(),
                from: from.clone(),
                to: to.clone(),
            },
        ),
        Command::Summarize {
            column,
            variable,
            partition,
            tau,
            margin,
            merge,
            tau_merge,
            no_suppress_bottom,
            best_only,
            ..
        } => commands::summarize(
            &ctx,
            &SummarizeArgs {
                column: column.clone(),
                variable: variable.clone(),
                partition: partition.clone(),
                tau: *tau,
                margin: *margin,
                tau_merge: *tau_merge,
                merge: *merge,
                suppress_bottom: !no_suppress_bottom,
                best_only: *best_only,
            },
        ),
        Command::RateSearch {
            x1, x2, delta_max, step, ..
        } => commands::rate_search_cmd(
            &ctx,
            &RateSearchArgs {
                x1: x1.clone(),
                x2: x2.clone(),
                delta_max: *delta_max,
                step: *step,
            },
        ),
    }
}

fn write_out(target: &str, text: &str) -> Result<(), CliError> {
    let res = if target == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).and_then(|_| out.flush())
    } else {
        std::fs::write(target, text)
    };
    res.map_err(|e| CliError::data(format!("cannot write {target}: {e}")))
}

/// Parses `args`, runs the command and returns the process exit code.
/// Diagnostics go to standard error; the result sink is only written when
/// the whole command succeeded.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command).and_then(|text| write_out(&cli.command.shared().out, &text)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("fuzzyq: error: {e}");
            e.kind.code()
        }
    }
}
