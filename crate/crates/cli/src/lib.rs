//! Batch front end for `infolattice`: ingest samples, print measure
//! tables, run the identity checks and export lattice diagrams.

pub mod commands;
pub mod config;
pub mod dot;
pub mod error;
pub mod formats;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use infolattice::{LogBase, Tolerances};

use crate::config::{InputKind, OutputFormat, RunConfig};
pub use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "infolattice", version, about = "Information measures on the subset lattice")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Sample file (.csv) or pmf file (JSON)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Input kind; guessed from the extension when omitted
    #[arg(long, value_enum, global = true)]
    pub kind: Option<InputKind>,
    /// Logarithm base: 2 (bits) or e (nats)
    #[arg(long, global = true, default_value = "2", value_parser = config::parse_log_base)]
    pub log_base: LogBase,
    #[arg(long, global = true, default_value_t = infolattice::EXACT_TOLERANCE)]
    pub tol_exact: f64,
    #[arg(long, global = true, default_value_t = infolattice::DISTRIBUTIONAL_TOLERANCE)]
    pub tol_dist: f64,
    /// Largest accepted number of variables
    #[arg(long, global = true, default_value_t = infolattice::lattice::DEFAULT_MAX_DIM)]
    pub max_n: usize,
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,
    /// Write the document here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate a pmf file from a sample file
    Ingest {
        /// Comma-separated cardinalities; default is max observed value + 1
        #[arg(long, value_delimiter = ',')]
        cardinalities: Option<Vec<usize>>,
    },
    /// H, I, M and edge Δ for every subset
    Table,
    /// Check every identity family; exit 1 on any failure
    Verify,
    /// Hasse diagram of n variables or of the input distribution
    Export {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Term-cancellation table of the double signed sum
    Cancellation {
        #[arg(long)]
        n: usize,
    },
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            input: self.input.clone(),
            kind: self.kind,
            log_base: self.log_base,
            tolerances: Tolerances {
                exact: self.tol_exact,
                distributional: self.tol_dist,
            },
            max_n: self.max_n,
            format: self.format,
            out: self.out.clone(),
        }
    }
}

/// Runs one parsed invocation and returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32> {
    let cfg = cli.global.config();
    cfg.validate()?;
    let output = match &cli.command {
        Command::Ingest { cardinalities } => commands::ingest(&cfg, cardinalities.as_deref())?,
        Command::Table => commands::table(&cfg)?,
        Command::Verify => commands::verify(&cfg)?,
        Command::Export { n } => commands::export(&cfg, *n)?,
        Command::Cancellation { n } => commands::cancellation(*n)?,
    };
    match &cfg.out {
        Some(path) => {
            commands::write_file(path, &output.document)?;
            if let Some(s) = &output.summary {
                println!("{s}");
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth reporting
            let _ = stdout.write_all(output.document.as_bytes());
            if let Some(s) = &output.summary {
                eprintln!("{s}");
            }
        }
    }
    Ok(output.code)
}
