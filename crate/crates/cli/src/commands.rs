//! Subcommand bodies. Each returns the document to emit and an exit code;
//! writing it out is left to the caller.

use std::path::Path;

use infolattice::measures::MeasureTable;
use infolattice::transforms::cancellation_table;
use infolattice::verify::{verify_table, Limits};
use infolattice::{JointDistribution, PowerSetLattice};

use crate::config::{InputKind, OutputFormat, RunConfig};
use crate::dot;
use crate::error::{CliError, Result};
use crate::formats::{self, PmfFile};
use crate::report;

/// Rendered result of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub document: String,
    /// Short human summary for stderr, if any.
    pub summary: Option<String>,
    pub code: i32,
}

impl Output {
    fn ok(document: String) -> Self {
        Output {
            document,
            summary: None,
            code: 0,
        }
    }
}

fn load(cfg: &RunConfig, cardinalities: Option<&[usize]>) -> Result<JointDistribution> {
    let path = cfg.input_path()?;
    let d = match cfg.input_kind() {
        InputKind::Samples => formats::estimate(&formats::read_samples(path)?, cardinalities, path)?,
        InputKind::Pmf => formats::read_pmf(path)?,
    };
    if d.dim() > cfg.max_n {
        return Err(CliError::Usage(format!(
            "{} has {} variables, above --max-n {}",
            path.display(),
            d.dim(),
            cfg.max_n
        )));
    }
    Ok(d)
}

fn measure(cfg: &RunConfig) -> Result<MeasureTable> {
    let d = load(cfg, None)?;
    Ok(MeasureTable::from_distribution_with(&d, cfg.log_base, cfg.max_n)?)
}

/// Plug-in pmf from a sample file.
pub fn ingest(cfg: &RunConfig, cardinalities: Option<&[usize]>) -> Result<Output> {
    let path = cfg.input_path()?;
    let samples = formats::read_samples(path)?;
    let d = formats::estimate(&samples, cardinalities, path)?;
    if d.dim() > cfg.max_n {
        return Err(CliError::Usage(format!("{} variables, above --max-n {}", d.dim(), cfg.max_n)));
    }
    Ok(Output {
        document: PmfFile::from_distribution(&d).render(),
        summary: Some(format!(
            "{}: {} records, {} variables, support size {}",
            path.display(),
            samples.rows.len(),
            d.dim(),
            d.support_size()
        )),
        code: 0,
    })
}

pub fn table(cfg: &RunConfig) -> Result<Output> {
    let t = measure(cfg)?;
    Ok(Output::ok(match cfg.format.unwrap_or(OutputFormat::Table) {
        OutputFormat::Table => report::table_text(&t),
        OutputFormat::Records => report::table_records(&t),
        OutputFormat::Dot => dot::render_dot(t.lattice(), Some(&t))?,
    }))
}

/// Exit code 1 when any identity family misses its tolerance.
pub fn verify(cfg: &RunConfig) -> Result<Output> {
    let t = measure(cfg)?;
    let r = verify_table(&t, cfg.tolerances, Limits::default())?;
    let document = match cfg.format.unwrap_or(OutputFormat::Table) {
        OutputFormat::Records => report::verify_records(&r),
        OutputFormat::Table => report::verify_text(&r),
        OutputFormat::Dot => return Err(CliError::Usage("verify has no DOT output".into())),
    };
    Ok(Output {
        document,
        summary: None,
        code: if r.passed() { 0 } else { 1 },
    })
}

/// Hasse diagram of `n` bare variables, or of the input distribution.
pub fn export(cfg: &RunConfig, n: Option<usize>) -> Result<Output> {
    let (lattice, t) = match (n, &cfg.input) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --n or --input, not both".into())),
        (Some(n), None) => (PowerSetLattice::with_labels_capped(default_labels(n), cfg.max_n)?, None),
        (None, Some(_)) => {
            let t = measure(cfg)?;
            ((**t.lattice()).clone(), Some(t))
        }
        (None, None) => return Err(CliError::Usage("export needs --n or --input".into())),
    };
    Ok(Output::ok(match cfg.format.unwrap_or(OutputFormat::Dot) {
        OutputFormat::Dot => dot::render_dot(&lattice, t.as_ref())?,
        OutputFormat::Records => dot::render_records(&lattice, t.as_ref()),
        OutputFormat::Table => match &t {
            Some(t) => report::table_text(t),
            None => return Err(CliError::Usage("table output needs --input".into())),
        },
    }))
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

pub fn cancellation(n: usize) -> Result<Output> {
    Ok(Output::ok(report::cancellation_text(&cancellation_table(n)?)))
}

/// Writes `text` to `path`.
pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
