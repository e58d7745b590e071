//! `arbor`: batch front end for the group, FPP and dynamics engines.
//!
//! Exit codes: 0 success, 2 a mathematical check failed (the report is
//! still written), 1 usage or input error.

mod catalog_cmd;
mod dyn_cmd;
mod fpp_cmd;
mod group_cmd;
mod inputs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use arbor_core::group::DEFAULT_ELEMENT_BUDGET;
use output::Report;

#[derive(Parser, Debug)]
#[command(name = "arbor", version, about = "Self-similar groups, fixed-point proportions and PCF dynamics")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalOpts {
    /// Element budget for quotient enumeration [default: $ARBOR_BUDGET, else 2000000]
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Wreath recursions: quotients and structural certificates.
    #[command(subcommand)]
    Group(group_cmd::GroupCommand),
    /// Fixed-point process and fixed-point proportions.
    #[command(subcommand)]
    Fpp(fpp_cmd::FppCommand),
    /// Polynomial dynamics: critical data, exceptional sets, classification.
    #[command(subcommand)]
    Dyn(dyn_cmd::DynCommand),
    /// Built-in fixtures.
    #[command(subcommand)]
    Catalog(catalog_cmd::CatalogCommand),
}

/// Flag, then `ARBOR_BUDGET`, then the library default.
fn resolve_budget(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("ARBOR_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("ARBOR_BUDGET must be a positive integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_ELEMENT_BUDGET),
    }
}

/// Settings shared by every subcommand after defaults are applied.
#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub budget: usize,
    pub format: Format,
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    let resolved = Resolved {
        budget: resolve_budget(cli.global.budget)?,
        format: cli.global.format,
    };
    match cli.command {
        Command::Group(c) => group_cmd::run(c, &resolved),
        Command::Fpp(c) => fpp_cmd::run(c, &resolved),
        Command::Dyn(c) => dyn_cmd::run(c, &resolved),
        Command::Catalog(c) => catalog_cmd::run(c, &resolved),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let global = cli.global.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = output::emit(&report, &global) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
