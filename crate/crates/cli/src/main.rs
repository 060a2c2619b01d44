//! `eqpl`: parse, evaluate, prove and solve exogenous quantum propositional
//! logic formulas.

mod commands;
mod external;
mod model_file;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use eqpl::syntax::Category;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Parser)]
#[command(name = "eqpl", version, about = "Exogenous quantum propositional logic workbench")]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Slack for comparisons between reals.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Command consulted when the builtin arithmetic oracle is undecided.
    #[arg(long, global = true)]
    oracle_cmd: Option<String>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Classical,
    Real,
    Complex,
    Quantum,
}

impl From<Kind> for Category {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Classical => Category::Classical,
            Kind::Real => Category::Real,
            Kind::Complex => Category::Complex,
            Kind::Quantum => Category::Quantum,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula or term and print it in canonical form.
    Parse {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value = "quantum")]
        category: Kind,
    },
    /// Replace every abbreviation by its definition.
    Expand {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value = "quantum")]
        category: Kind,
    },
    /// Decide whether a model satisfies a quantum formula.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Evaluate a real or complex term in a model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// Check a proof script.
    Prove {
        #[arg(long)]
        script: PathBuf,
    },
    /// Print the quantum disjunctive normal form of a formula.
    Dnf {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 20)]
        max_atoms: usize,
    },
    /// Search for a model of a quantum formula.
    Solve {
        #[arg(long)]
        formula: String,
        /// Extra qubits for the frame, comma separated.
        #[arg(long, value_delimiter = ',')]
        bound: Vec<String>,
        /// Where to write the model file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a model file against the structure invariants.
    ValidateModel {
        #[arg(long)]
        model: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = commands::Globals { seed: cli.seed, tol: cli.tol, oracle_cmd: cli.oracle_cmd };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Parse { formula, category } => commands::parse(&g, formula, (*category).into()),
        Command::Expand { formula, category } => commands::expand_cmd(&g, formula, (*category).into()),
        Command::Check { model, formula } => commands::check(&g, model, formula),
        Command::Eval { model, term } => commands::eval(&g, model, term),
        Command::Prove { script } => commands::prove(&g, script),
        Command::Dnf { formula, max_atoms } => commands::dnf(&g, formula, *max_atoms),
        Command::Solve { formula, bound, out } => commands::solve(&g, formula, bound, out.as_deref()),
        Command::ValidateModel { model } => commands::validate_model(&g, model),
    };
    match result {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
