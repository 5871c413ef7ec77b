//! Text and JSON renderings of measure tables, verification reports and
//! the cancellation table. Every real number is printed with 9 decimals.

use infolattice::transforms::CancellationTable;
use infolattice::verify::VerificationReport;
use infolattice::{MeasureTable, PowerSetLattice, SubsetMask};
use serde::Serialize;
use serde_json::json;

/// `{:.9}` with negative zero folded to zero.
pub fn fixed(v: f64) -> String {
    let s = format!("{v:.9}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Value rounded to 9 decimals, for JSON output.
pub fn rounded(v: f64) -> f64 {
    let r = (v * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeDelta {
    pub added: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeRow {
    pub mask: u32,
    pub subset: Vec<String>,
    #[serde(rename = "H")]
    pub entropy: f64,
    #[serde(rename = "I")]
    pub interaction: f64,
    #[serde(rename = "M")]
    pub multi: f64,
    /// `Δ(ν \ {x}; x)` for each descending edge, ascending by `x`.
    pub delta: Vec<EdgeDelta>,
}

pub fn node_rows(table: &MeasureTable) -> Vec<NodeRow> {
    let lattice = table.lattice();
    let i = table.interaction();
    lattice
        .nodes()
        .map(|nu| NodeRow {
            mask: nu.bits(),
            subset: nu.indices().map(|k| lattice.labels()[k].clone()).collect(),
            entropy: table.entropy().get(nu),
            interaction: i.get(nu),
            multi: table.multi().get(nu),
            delta: nu
                .indices()
                .map(|x| EdgeDelta {
                    added: lattice.labels()[x].clone(),
                    value: i.get(nu) - i.get(nu.without(x)),
                })
                .collect(),
        })
        .collect()
}

pub fn table_text(table: &MeasureTable) -> String {
    let rows = node_rows(table);
    let lattice = table.lattice();
    let subsets: Vec<String> = lattice.nodes().map(|nu| lattice.format_mask(nu)).collect();
    let width = subsets.iter().map(|s| s.chars().count()).max().unwrap_or(1).max(6);
    let mut out = format!(
        "# {} variables: {} ({})\n",
        lattice.dim(),
        lattice.labels().join(", "),
        table.base()
    );
    out.push_str(&format!(
        "{:>6}  {:<width$}  {:>14}  {:>14}  {:>14}  delta by added variable\n",
        "mask", "subset", "H", "I", "M"
    ));
    for (row, subset) in rows.iter().zip(&subsets) {
        let deltas: Vec<String> = row
            .delta
            .iter()
            .map(|d| format!("{}={}", d.added, fixed(d.value)))
            .collect();
        let line = format!(
            "{:>6}  {:<width$}  {:>14}  {:>14}  {:>14}  {}",
            row.mask,
            subset,
            fixed(row.entropy),
            fixed(row.interaction),
            fixed(row.multi),
            deltas.join(" ")
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn table_records(table: &MeasureTable) -> String {
    let rows: Vec<NodeRow> = node_rows(table)
        .into_iter()
        .map(|mut r| {
            r.entropy = rounded(r.entropy);
            r.interaction = rounded(r.interaction);
            r.multi = rounded(r.multi);
            for d in &mut r.delta {
                d.value = rounded(d.value);
            }
            r
        })
        .collect();
    let doc = json!({
        "variables": table.lattice().labels(),
        "unit": table.base().unit(),
        "nodes": rows,
    });
    serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
}

pub fn verify_text(report: &VerificationReport) -> String {
    let width = report.families.iter().map(|f| f.name.len()).max().unwrap_or(0);
    let mut out = format!(
        "{:<width$}  {:>9}  {:>12}  {:>10}  result\n",
        "identity family", "instances", "max residual", "tolerance"
    );
    for f in &report.families {
        out.push_str(&format!(
            "{:<width$}  {:>9}  {:>12.3e}  {:>10.1e}  {}\n",
            f.name,
            f.instances,
            f.max_residual,
            f.tolerance,
            if f.passed { "PASS" } else { "FAIL" }
        ));
    }
    let passed = report.families.iter().filter(|f| f.passed).count();
    out.push_str(&format!(
        "overall: {} ({}/{} families)\n",
        if report.passed() { "PASS" } else { "FAIL" },
        passed,
        report.families.len()
    ));
    out
}

pub fn verify_records(report: &VerificationReport) -> String {
    let doc = json!({
        "passed": report.passed(),
        "families": report.families,
    });
    serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
}

/// Member list with 1-based numbers, `1,2,3`; the empty set is `0`.
fn numbered(mask: SubsetMask) -> String {
    if mask.is_empty() {
        return "0".into();
    }
    mask.indices().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// The cancellation table with `τ` columns (headed by `(-1)^|τ|`), `σ`
/// rows, and a right-hand column holding the surviving terms.
pub fn cancellation_text(table: &CancellationTable) -> String {
    let order = table.order();
    let cell_w = numbered(SubsetMask::full(table.dim())).len() + 2;
    let sign = |s: i8| if s > 0 { '+' } else { '-' };
    let mut out = String::new();

    out.push_str(&format!("{:<cell_w$}", "σ \\ τ"));
    for &tau in order {
        out.push_str(&format!("  {:<cell_w$}", format!("{} {}", numbered(tau), sign(tau.parity_sign() as i8))));
    }
    out.push_str("  Sums\n");

    for (row, (&sigma, sum)) in table.entries().iter().zip(order.iter().zip(table.row_sums())) {
        out.push_str(&format!("{:<cell_w$}", numbered(sigma)));
        for e in row {
            let cell = match e {
                Some(s) => format!("{} {}", numbered(sigma), sign(*s)),
                None => String::new(),
            };
            out.push_str(&format!("  {cell:<cell_w$}"));
        }
        let total = match sum {
            0 => "0".to_string(),
            1 => numbered(sigma),
            k => format!("{k}*({})", numbered(sigma)),
        };
        out.push_str(&format!("  {total}\n"));
    }
    out
}

pub fn lattice_header(lattice: &PowerSetLattice) -> String {
    format!("{} variables: {}", lattice.dim(), lattice.labels().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use infolattice::transforms::cancellation_table;

    #[test]
    fn fixed_point_formatting() {
        assert_eq!(fixed(-1.0), "-1.000000000");
        assert_eq!(fixed(-1e-17), "0.000000000");
        assert_eq!(fixed(0.8112781244591328), "0.811278124");
        assert_eq!(rounded(-3e-12), 0.0);
    }

    #[test]
    fn cancellation_layout() {
        let text = cancellation_text(&cancellation_table(3).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 9);
        assert!(lines[0].starts_with("σ \\ τ"));
        assert!(lines[0].contains("1,2,3 -"));
        assert!(lines[1].starts_with("1,2,3"));
        assert!(lines[1].trim_end().ends_with("1,2,3"));
        assert!(lines[2..].iter().all(|l| l.trim_end().ends_with(" 0")));
        assert_eq!(cancellation_text(&cancellation_table(1).unwrap()).lines().count(), 3);
    }
}
