//! Sample files (CSV) and pmf files (JSON).
//!
//! A sample file has a header row of variable names followed by one record
//! of non-negative integer category values per line. A pmf file looks like
//!
//! ```json
//! {
//!   "variables": [{"name": "X1", "cardinality": 2}],
//!   "mass": [
//!     {"tuple": [0], "probability": 0.5},
//!     {"tuple": [1], "probability": 0.5}
//!   ]
//! }
//! ```

use std::fs;
use std::path::Path;

use infolattice::{Error as CoreError, JointDistribution, VariableSpec};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Parsed sample file: header names and data rows with their line numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Samples {
    pub names: Vec<String>,
    pub rows: Vec<Vec<usize>>,
    pub lines: Vec<u64>,
}

impl Samples {
    /// Cardinalities as `max value + 1` per column.
    pub fn inferred_cardinalities(&self) -> Vec<usize> {
        (0..self.names.len())
            .map(|j| self.rows.iter().map(|r| r[j] + 1).max().unwrap_or(1))
            .collect()
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_samples(path: &Path) -> Result<Samples> {
    parse_samples(&read(path)?, path)
}

pub fn parse_samples(text: &str, path: &Path) -> Result<Samples> {
    if text.trim().is_empty() {
        return Err(CliError::EmptyFile {
            path: path.to_path_buf(),
        });
    }
    let parse_err = |line: u64, message: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let names: Vec<String> = reader
        .headers()
        .map_err(|e| parse_err(e.position().map_or(1, |p| p.line()), e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if names.iter().any(String::is_empty) {
        return Err(parse_err(1, "empty variable name in header".into()));
    }

    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| parse_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .map(|field| {
                field
                    .parse::<usize>()
                    .map_err(|_| parse_err(line, format!("{field:?} is not a non-negative integer")))
            })
            .collect::<Result<Vec<usize>>>()?;
        rows.push(row);
        lines.push(line);
    }
    if rows.is_empty() {
        return Err(CliError::NoDataRows {
            path: path.to_path_buf(),
        });
    }
    Ok(Samples { names, rows, lines })
}

/// Plug-in estimate from parsed samples. Cardinalities default to the
/// observed range of each column.
pub fn estimate(samples: &Samples, cardinalities: Option<&[usize]>, path: &Path) -> Result<JointDistribution> {
    let cards = match cardinalities {
        Some(c) if c.len() != samples.names.len() => {
            return Err(CliError::Usage(format!(
                "{} cardinalities given for {} variables",
                c.len(),
                samples.names.len()
            )))
        }
        Some(c) => c.to_vec(),
        None => samples.inferred_cardinalities(),
    };
    let specs = samples
        .names
        .iter()
        .zip(cards)
        .map(|(n, c)| VariableSpec::new(n.clone(), c))
        .collect();
    JointDistribution::from_samples(&samples.rows, specs).map_err(|e| match e {
        CoreError::SampleOutOfRange {
            row,
            variable,
            value,
            cardinality,
        } => CliError::Parse {
            path: path.to_path_buf(),
            line: samples.lines[row],
            message: format!("cardinality violation: {variable}={value} but cardinality is {cardinality}"),
        },
        CoreError::SampleArity { row, expected, found } => CliError::Parse {
            path: path.to_path_buf(),
            line: samples.lines[row],
            message: format!("expected {expected} values, found {found}"),
        },
        other => other.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassRecord {
    pub tuple: Vec<usize>,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmfFile {
    pub variables: Vec<VariableSpec>,
    pub mass: Vec<MassRecord>,
}

impl PmfFile {
    pub fn from_distribution(d: &JointDistribution) -> Self {
        PmfFile {
            variables: d.variables().to_vec(),
            mass: d
                .support()
                .map(|(t, p)| MassRecord {
                    tuple: t.to_vec(),
                    probability: p,
                })
                .collect(),
        }
    }

    pub fn into_distribution(self) -> infolattice::Result<JointDistribution> {
        let records = self.mass.into_iter().map(|r| (r.tuple, r.probability)).collect();
        JointDistribution::new(self.variables, records)
    }

    /// One variable and one mass record per line.
    pub fn render(&self) -> String {
        let mut out = String::from("{\n  \"variables\": [\n");
        push_lines(&mut out, self.variables.iter().map(json));
        out.push_str("  ],\n  \"mass\": [\n");
        push_lines(&mut out, self.mass.iter().map(json));
        out.push_str("  ]\n}\n");
        out
    }
}

fn push_lines(out: &mut String, items: impl Iterator<Item = String>) {
    let items: Vec<String> = items.collect();
    for (k, item) in items.iter().enumerate() {
        out.push_str("    ");
        out.push_str(item);
        if k + 1 < items.len() {
            out.push(',');
        }
        out.push('\n');
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serialises")
}

pub fn parse_pmf(text: &str, path: &Path) -> Result<JointDistribution> {
    let file: PmfFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    file.into_distribution().map_err(|e| CliError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn read_pmf(path: &Path) -> Result<JointDistribution> {
    let text = read(path)?;
    if text.trim().is_empty() {
        return Err(CliError::EmptyFile {
            path: path.to_path_buf(),
        });
    }
    parse_pmf(&text, path)
}
