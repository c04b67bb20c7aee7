//! `enforce`: command-line front end for the enforcement game analyzer.
//!
//! Exit status is 0 on success, 1 when a verdict differs from `--expect`
//! or output cannot be written, 2 for unreadable or invalid input, and 3
//! when synthesis parameters admit no equilibrium.

mod commands;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use enforcement::repeated::Classification;
use enforcement::Rational;

use input::{affine_arg, integer_grid, rational_arg, rational_list};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Io(String),
}

impl From<enforcement::Error> for CliError {
    fn from(e: enforcement::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Input(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    #[value(name = "SPE")]
    Spe,
    #[value(name = "NE_not_SPE")]
    NeNotSpe,
    #[value(name = "Not_NE")]
    NotNe,
}

impl From<Expect> for Classification {
    fn from(e: Expect) -> Self {
        match e {
            Expect::Spe => Classification::Spe,
            Expect::NeNotSpe => Classification::NeNotSpe,
            Expect::NotNe => Classification::NotNe,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "enforce", version, about = "Exact analysis of police-vs-drivers enforcement games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format. Not every command supports csv.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

/// Parameters of the short-period game and its punishment path.
#[derive(Debug, Args)]
pub struct ShortPeriodArgs {
    /// Periods per year, N.
    #[arg(long)]
    pub periods: u32,
    /// Punishment path length, n.
    #[arg(long)]
    pub punishment: u32,
    /// Per-period discount factor.
    #[arg(long, value_parser = rational_arg)]
    pub delta: Rational,
    /// Speeding probability on the equilibrium path, b.
    #[arg(long, value_parser = rational_arg)]
    pub speeding: Rational,
    /// Accident damage borne by the police, α.
    #[arg(long, value_parser = rational_arg)]
    pub alpha: Rational,
    /// Yearly enforcement cost, β.
    #[arg(long, value_parser = rational_arg)]
    pub beta: Rational,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pure and mixed Nash equilibria of a stage game.
    AnalyzeStage {
        /// Game JSON file or builtin name.
        #[arg(long)]
        game: String,
    },
    /// Backward induction on a perfect-information tree.
    Induct {
        /// Tree JSON file or builtin name.
        #[arg(long)]
        tree: String,
        /// Also report the probability at which mixing at this node flips
        /// the parent mover's choice.
        #[arg(long)]
        pivot: Option<String>,
    },
    /// Classify a strategy automaton as SPE, NE_not_SPE or Not_NE.
    Verify {
        #[arg(long)]
        game: String,
        /// Automaton JSON file or builtin name.
        #[arg(long)]
        automaton: String,
        #[arg(long, value_parser = rational_arg)]
        delta: Rational,
        /// Exit with status 1 unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Build and verify the punishment-path automaton.
    Synthesize {
        #[command(flatten)]
        params: ShortPeriodArgs,
        /// Per-action tolerance used to classify mixed play.
        #[arg(long, value_parser = rational_arg, default_value = "0")]
        tolerance: Rational,
        /// Pay the police the minimal enforcement subsidy on the punishment path.
        #[arg(long)]
        subsidize: bool,
        /// Write the automaton JSON here.
        #[arg(long)]
        automaton_out: Option<PathBuf>,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Driver and police bounds on the speeding probability.
    Thresholds {
        /// Punishment path length.
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = rational_arg)]
        delta: Rational,
        #[arg(long, value_parser = rational_arg, requires = "beta")]
        alpha: Option<Rational>,
        #[arg(long, value_parser = rational_arg, requires = "alpha")]
        beta: Option<Rational>,
        /// Speeding probability used for the subsidy columns in csv output.
        #[arg(long, value_parser = rational_arg)]
        speeding: Option<Rational>,
        /// Report the shortest punishment path whose bound lies below this.
        #[arg(long, value_parser = rational_arg)]
        target: Option<Rational>,
    },
    /// Minimal enforcement subsidy on the punishment path.
    Subsidy {
        #[command(flatten)]
        params: ShortPeriodArgs,
    },
    /// Simulate the adaptive drift of the speeding probability.
    Simulate {
        /// Adaptation spec JSON file.
        #[arg(long)]
        spec: PathBuf,
    },
    /// Bounds and subsidies over a parameter grid.
    Sweep {
        /// Punishment lengths, e.g. `1,2,5..=8`.
        #[arg(long)]
        n: String,
        /// Discount factors, e.g. `1/2,9/10`.
        #[arg(long)]
        delta: String,
        /// Speeding probabilities.
        #[arg(long)]
        speeding: String,
        #[arg(long, required_unless_present = "alpha_affine", conflicts_with = "alpha_affine")]
        alpha: Option<String>,
        /// α as `a0,a1`, evaluated as a0 + a1·b at each speeding probability.
        #[arg(long)]
        alpha_affine: Option<String>,
        #[arg(long, required_unless_present = "beta_affine", conflicts_with = "beta_affine")]
        beta: Option<String>,
        /// β as `a0,a1`, evaluated as a0 + a1·b.
        #[arg(long)]
        beta_affine: Option<String>,
    },
}

/// A finished command: the report and the status to exit with.
pub struct Outcome {
    pub report: String,
    pub status: u8,
    pub note: Option<String>,
}

impl Outcome {
    pub fn ok(report: String) -> Self {
        Outcome {
            report,
            status: 0,
            note: None,
        }
    }

    /// Status 1 with a note when `expect` is set and differs from `got`.
    pub fn expecting(report: String, expect: Option<Expect>, got: Classification) -> Self {
        match expect.map(Classification::from) {
            Some(want) if want != got => Outcome {
                report,
                status: 1,
                note: Some(format!("expected {want}, got {got}")),
            },
            _ => Outcome::ok(report),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::AnalyzeStage { game } => commands::analyze_stage(game, format),
        Command::Induct { tree, pivot } => commands::induct(tree, pivot.as_deref(), format),
        Command::Verify {
            game,
            automaton,
            delta,
            expect,
        } => commands::verify(game, automaton, delta, *expect, format),
        Command::Synthesize {
            params,
            tolerance,
            subsidize,
            automaton_out,
            expect,
        } => commands::synthesize(params, tolerance, *subsidize, automaton_out.as_deref(), *expect, format),
        Command::Thresholds {
            n,
            delta,
            alpha,
            beta,
            speeding,
            target,
        } => {
            let costs = alpha.as_ref().zip(beta.as_ref());
            commands::thresholds(*n, delta, costs, speeding.as_ref(), target.as_ref(), format)
        }
        Command::Subsidy { params } => commands::subsidy(params, format),
        Command::Simulate { spec } => commands::simulate(spec, format),
        Command::Sweep {
            n,
            delta,
            speeding,
            alpha,
            alpha_affine,
            beta,
            beta_affine,
        } => {
            let grid = commands::SweepGrid {
                n: flag("--n", n, integer_grid)?,
                delta: flag("--delta", delta, rational_list)?,
                speeding: flag("--speeding", speeding, rational_list)?,
                alpha: cost_grid("--alpha", alpha.as_deref(), alpha_affine.as_deref())?,
                beta: cost_grid("--beta", beta.as_deref(), beta_affine.as_deref())?,
            };
            commands::sweep(&grid, format)
        }
    }
}

fn flag<T>(name: &str, text: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<T, CliError> {
    parse(text).map_err(|e| CliError::Input(format!("{name} `{text}`: {e}")))
}

fn cost_grid(name: &str, list: Option<&str>, affine: Option<&str>) -> Result<commands::CostGrid, CliError> {
    match (list, affine) {
        (Some(text), _) => Ok(commands::CostGrid::Values(flag(name, text, rational_list)?)),
        (None, Some(text)) => {
            let (a0, a1) = flag(&format!("{name}-affine"), text, affine_arg)?;
            Ok(commands::CostGrid::Affine(a0, a1))
        }
        (None, None) => Err(CliError::Input(format!("{name} is required"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code());
        }
    };
    let mut report = outcome.report;
    if !report.ends_with('\n') {
        report.push('\n');
    }
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &report) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{report}"),
    }
    if let Some(note) = outcome.note {
        eprintln!("{note}");
    }
    ExitCode::from(outcome.status)
}
