//! `monogenic`: runs the verification suites and writes JSON or CSV reports.
//!
//! Exit status: 0 all checks pass, 1 a check failed, 2 the query has a
//! negative answer (no conformal weight), 64 usage error, 70 internal error.

mod commands;
mod config;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{GridOptions, GridTest, Omega, SymbolName};
use config::{Format, GlobalArgs, RunConfig, UsageError};
use monogenic::suite::Perturbation;
use monogenic::Error;
use render::Output;

const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Debug, Parser)]
#[command(name = "monogenic", version, about = "Clifford-module identities and conformal weights")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the exact identity suite at dimension n.
    Verify {
        /// Inject a known fault; `sigma-const` rescales the spin action.
        #[arg(long)]
        perturb: Option<String>,
    },
    /// Conformal weight of a first-order symbol.
    Weight {
        #[arg(long, value_enum)]
        symbol: SymbolName,
        /// Symmetric power for `rarita-j`.
        #[arg(long, default_value_t = 2)]
        j: usize,
    },
    /// Gamma matrices, Φ and the spinor factorization of Λ•ℂW.
    Gamma,
    /// Twisted Dirac symbol on ker ε ⊂ ⊙ʲW⊗Λ•W.
    Rarita {
        #[arg(long, default_value_t = 1)]
        j: usize,
    },
    /// Flat-grid checks.
    Grid {
        #[arg(long, value_enum)]
        test: GridTest,
        /// Comma-separated grid spacings.
        #[arg(long, value_delimiter = ',')]
        h: Vec<f64>,
        #[arg(long, value_enum)]
        omega: Option<Omega>,
        /// Weight of the sampled section, as p/q or a decimal.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
    },
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("monogenic: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedDimension { .. }
        | Error::ResourceLimit { .. }
        | Error::InvalidGrid(_)
        | Error::ParseScalar(_)
        | Error::GradeOutOfRange { .. }
        | Error::BladeIndex { .. } => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn run(cli: &Cli) -> Result<(RunConfig, Output), ExitCode> {
    let default_n = match cli.command {
        Command::Gamma => 4,
        _ => 3,
    };
    let cfg = RunConfig::resolve(&cli.global, default_n).map_err(|UsageError(m)| usage(&m))?;
    if let Some(t) = cfg.tol {
        monogenic::scalar::set_float_tolerance(t).map_err(|e| usage(&e.to_string()))?;
    }
    let result = match &cli.command {
        Command::Verify { perturb } => {
            let p = match perturb.as_deref() {
                None => None,
                Some(s) => Some(Perturbation::parse(s).ok_or_else(|| usage(&format!("unknown perturbation {s:?}")))?),
            };
            commands::verify(&cfg, p)
        }
        Command::Weight { symbol, j } => commands::weight(&cfg, *symbol, *j),
        Command::Gamma => commands::gamma(&cfg),
        Command::Rarita { j } => commands::rarita(&cfg, *j),
        Command::Grid { test, h, omega, w } => {
            let opts = GridOptions { test: *test, hs: h.clone(), omega: *omega, w: w.clone() };
            commands::grid(&cfg, &opts)
        }
    };
    match result {
        Ok(out) => Ok((cfg, out)),
        Err(e) => {
            eprintln!("monogenic: {e}");
            Err(ExitCode::from(error_code(&e)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (cfg, out) = match run(&cli) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let mut text = match cfg.format {
        Format::Json => out.json.clone(),
        Format::Csv => out.csv(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("monogenic: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INTERNAL);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    if let Some(n) = &out.notice {
        eprintln!("{n}");
    }
    ExitCode::from(out.exit as u8)
}
