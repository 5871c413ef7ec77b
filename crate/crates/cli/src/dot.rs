//! Hasse diagram export as a Graphviz digraph or a JSON node/edge list.

use infolattice::{MeasureTable, PowerSetLattice, SubsetMask};
use serde_json::json;

use crate::error::{CliError, Result};
use crate::report::{fixed, rounded};

/// Largest lattice drawn as DOT.
pub const MAX_DOT_DIM: usize = 10;

fn sign_char(mask: SubsetMask) -> char {
    if mask.sign_plus() > 0 {
        '+'
    } else {
        '-'
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per subset (id = mask encoding), one upward edge per covering
/// pair. With a measure table, labels carry H and I and edges carry Δ.
pub fn render_dot(lattice: &PowerSetLattice, table: Option<&MeasureTable>) -> Result<String> {
    if lattice.dim() > MAX_DOT_DIM {
        return Err(CliError::Usage(format!(
            "DOT export is limited to {MAX_DOT_DIM} variables, got {}",
            lattice.dim()
        )));
    }
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for nu in lattice.nodes() {
        let mut label = format!("{}\\n{}", escape(&lattice.format_mask(nu)), sign_char(nu));
        if let Some(t) = table {
            label.push_str(&format!(
                "\\nH={}\\nI={}",
                fixed(t.entropy().get(nu)),
                fixed(t.interaction().get(nu))
            ));
        }
        out.push_str(&format!("  {} [label=\"{}\"];\n", nu.bits(), label));
    }
    for e in lattice.covering_edges() {
        match table {
            Some(t) => {
                let i = t.interaction();
                let d = i.get(e.upper) - i.get(e.lower);
                out.push_str(&format!(
                    "  {} -> {} [label=\"Δ={}\"];\n",
                    e.lower.bits(),
                    e.upper.bits(),
                    fixed(d)
                ));
            }
            None => out.push_str(&format!("  {} -> {};\n", e.lower.bits(), e.upper.bits())),
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Same content as [`render_dot`] as a JSON document.
pub fn render_records(lattice: &PowerSetLattice, table: Option<&MeasureTable>) -> String {
    let nodes: Vec<_> = lattice
        .nodes()
        .map(|nu| {
            let mut v = json!({
                "id": nu.bits(),
                "subset": nu.indices().map(|k| lattice.labels()[k].clone()).collect::<Vec<_>>(),
                "sign": nu.sign_plus(),
            });
            if let Some(t) = table {
                v["H"] = json!(rounded(t.entropy().get(nu)));
                v["I"] = json!(rounded(t.interaction().get(nu)));
            }
            v
        })
        .collect();
    let edges: Vec<_> = lattice
        .covering_edges()
        .into_iter()
        .map(|e| {
            let mut v = json!({
                "from": e.lower.bits(),
                "to": e.upper.bits(),
                "added": lattice.labels()[e.added].clone(),
            });
            if let Some(t) = table {
                let i = t.interaction();
                v["delta"] = json!(rounded(i.get(e.upper) - i.get(e.lower)));
            }
            v
        })
        .collect();
    let doc = json!({ "variables": lattice.labels(), "nodes": nodes, "edges": edges });
    serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
}
