use std::path::PathBuf;

use clap::ValueEnum;
use infolattice::lattice::DEFAULT_MAX_DIM;
use infolattice::{LogBase, Tolerances};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Samples,
    Pmf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned text
    Table,
    /// JSON document
    Records,
    /// Graphviz digraph
    Dot,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub kind: Option<InputKind>,
    pub log_base: LogBase,
    pub tolerances: Tolerances,
    pub max_n: usize,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: None,
            kind: None,
            log_base: LogBase::Bits,
            tolerances: Tolerances::default(),
            max_n: DEFAULT_MAX_DIM,
            format: None,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let t = self.tolerances;
        if !(t.exact > 0.0 && t.distributional > 0.0) {
            return Err(CliError::Usage("tolerances must be positive".into()));
        }
        if self.max_n < 1 {
            return Err(CliError::Usage("--max-n must be at least 1".into()));
        }
        Ok(())
    }

    pub fn input_path(&self) -> Result<&PathBuf> {
        self.input
            .as_ref()
            .ok_or_else(|| CliError::Usage("--input is required".into()))
    }

    /// Explicit `--kind`, else `samples` for `.csv` files and `pmf` otherwise.
    pub fn input_kind(&self) -> InputKind {
        self.kind.unwrap_or_else(|| match &self.input {
            Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => InputKind::Samples,
            _ => InputKind::Pmf,
        })
    }
}

pub fn parse_log_base(s: &str) -> std::result::Result<LogBase, String> {
    match s {
        "2" | "bits" => Ok(LogBase::Bits),
        "e" | "nats" => Ok(LogBase::Nats),
        other => Err(format!("unsupported log base {other:?}; use 2 or e")),
    }
}
