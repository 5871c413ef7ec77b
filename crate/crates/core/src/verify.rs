//! Runs every duality and sum-rule identity against one distribution and
//! reports the worst residual per identity family.

use serde::Serialize;

use crate::error::Result;
use crate::lattice::{ChainPath, SubsetMask};
use crate::measures::{self, ChainTerm, MeasureTable};
use crate::sumrules;
use crate::transforms::{signed_transform, LatticeFunction, SignConvention};
use crate::Tolerances;

/// Bounds that keep the enumeration-heavy families affordable on larger
/// lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest node whose maximal chains are decomposed.
    pub chain_node_size: usize,
    /// Largest `|b \ a|` checked for path independence.
    pub path_span: usize,
    /// Largest conditioning set.
    pub conditioning_size: usize,
    /// Largest `|v ∪ W|` checked against the expectation route.
    pub conditional_union: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            chain_node_size: 7,
            path_span: 5,
            conditioning_size: 3,
            conditional_union: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyResult {
    pub name: &'static str,
    pub instances: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub families: Vec<FamilyResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.passed)
    }

    pub fn family(&self, name: &str) -> Option<&FamilyResult> {
        self.families.iter().find(|f| f.name == name)
    }
}

struct Family {
    name: &'static str,
    tolerance: f64,
    instances: usize,
    max: f64,
}

impl Family {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Family {
            name,
            tolerance,
            instances: 0,
            max: 0.0,
        }
    }

    fn record(&mut self, residual: f64) {
        self.instances += 1;
        // NaN must fail the family
        if residual.is_nan() || residual > self.max {
            self.max = if residual.is_nan() { f64::INFINITY } else { residual };
        }
    }

    fn finish(self) -> FamilyResult {
        FamilyResult {
            name: self.name,
            instances: self.instances,
            max_residual: self.max,
            tolerance: self.tolerance,
            passed: self.max < self.tolerance,
        }
    }
}

pub const H_I_DUALITY: &str = "H-I duality round trip";
pub const INVOLUTION: &str = "signed transform involution";
pub const M_FROM_I: &str = "M from I";
pub const I_FROM_M: &str = "I from M";
pub const DELTA_ROUTES: &str = "delta routes agree";
pub const DELTA_FROM_M: &str = "delta from M";
pub const DELTA_H_DUALITY: &str = "delta-H duality";
pub const THREE_VARIABLE: &str = "three-variable delta identities";
pub const CHAIN_DECOMPOSITION: &str = "chain decomposition of I";
pub const CONDITIONAL: &str = "conditional I, lattice vs expectation";
pub const PATH_INDEPENDENCE: &str = "path independence";
pub const SAME_ENDPOINT: &str = "same-endpoint sum rules";
pub const MULTI_CONDITIONAL: &str = "multi-conditional vs chain sum";

/// Evaluates every identity family on `table`. The conditional family
/// needs the source distribution and records no instances without one.
pub fn verify_table(table: &MeasureTable, tol: Tolerances, limits: Limits) -> Result<VerificationReport> {
    let lattice = table.lattice().clone();
    let n = lattice.dim();
    let h = table.entropy();
    let i = table.interaction();
    let m = table.multi();
    let mut families = Vec::new();

    let mut f = Family::new(H_I_DUALITY, tol.exact);
    let back = measures::entropy_from_interaction(i)?;
    for nu in lattice.nodes() {
        f.record((back.get(nu) - h.get(nu)).abs());
    }
    families.push(f.finish());

    let mut f = Family::new(INVOLUTION, tol.exact);
    for func in [h, i, m] {
        for conv in [SignConvention::Plain, SignConvention::PlusOne] {
            let twice = signed_transform(&signed_transform(func, conv), conv);
            f.record(twice.max_abs_diff(func)?);
        }
    }
    families.push(f.finish());

    let mut f5a = Family::new(M_FROM_I, tol.distributional);
    let mut f5b = Family::new(I_FROM_M, tol.distributional);
    for nu in lattice.nodes().filter(|nu| nu.len() >= 2) {
        f5a.record((measures::multi_from_interaction(i, nu) - m.get(nu)).abs());
        f5b.record((measures::interaction_from_multi(m, nu)? - i.get(nu)).abs());
    }
    families.push(f5a.finish());
    families.push(f5b.finish());

    let mut routes = Family::new(DELTA_ROUTES, tol.distributional);
    let mut from_m = Family::new(DELTA_FROM_M, tol.distributional);
    let mut duality = Family::new(DELTA_H_DUALITY, tol.distributional);
    for base in lattice.nodes() {
        for x in (0..n).filter(|&x| !base.contains(x)) {
            let r = measures::delta_routes(table, base, x)?;
            routes.record(r.spread());
            if base.len() >= 2 {
                from_m.record((measures::delta_from_multi(m, base, x)? - r.difference).abs());
            }
            if !base.is_empty() {
                duality.record(measures::delta_duality_residual(table, base, x)?);
            }
        }
    }
    families.push(routes.finish());
    families.push(from_m.finish());
    families.push(duality.finish());

    let mut f = Family::new(THREE_VARIABLE, tol.distributional);
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (0..n).filter(|&c| c != a && c != b) {
                for r in measures::three_variable_residuals(table, [a, b, c])? {
                    f.record(r);
                }
            }
        }
    }
    families.push(f.finish());

    let mut f = Family::new(CHAIN_DECOMPOSITION, tol.distributional);
    for nu in lattice.nodes().filter(|nu| !nu.is_empty() && nu.len() <= limits.chain_node_size) {
        for s in nu.indices() {
            for chain in lattice.enumerate_chains(SubsetMask::singleton(s), nu)? {
                let sum: f64 = measures::chain_decomposition(table, &chain)?
                    .iter()
                    .map(ChainTerm::value)
                    .sum();
                f.record((sum - i.get(nu)).abs());
            }
        }
    }
    families.push(f.finish());

    let mut f = Family::new(CONDITIONAL, tol.distributional);
    if let Some(d) = table.source() {
        for w in lattice
            .nodes()
            .filter(|w| !w.is_empty() && w.len() <= limits.conditioning_size)
        {
            let rest = lattice.full().difference(w);
            for v in rest.submasks().skip(1) {
                if v.len() + w.len() > limits.conditional_union {
                    continue;
                }
                let lattice_route = measures::conditional_interaction(table, v, w)?;
                let oracle = measures::conditional_interaction_by_expectation(d, v, w, table.base())?;
                f.record((lattice_route - oracle).abs());
            }
        }
    }
    families.push(f.finish());

    let mut f = Family::new(PATH_INDEPENDENCE, tol.distributional);
    for func in [h, i, m] {
        for b in lattice.nodes() {
            for a in b.submasks() {
                if b.difference(a).len() <= limits.path_span {
                    f.record(sumrules::verify_path_independence(func, a, b)?.spread());
                }
            }
        }
    }
    families.push(f.finish());

    let mut f = Family::new(SAME_ENDPOINT, tol.distributional);
    for func in [h, i, m] {
        for end in lattice.nodes() {
            for start in end.submasks() {
                let gap: Vec<usize> = end.difference(start).indices().collect();
                let chain = ChainPath::from_steps(start, &gap)?;
                same_endpoint_residual(func, &chain, &mut f)?;
            }
        }
    }
    families.push(f.finish());

    let mut f = Family::new(MULTI_CONDITIONAL, tol.exact);
    for b in lattice.nodes() {
        for a in b.submasks().skip(1).filter(|&a| a != b) {
            let gap: Vec<usize> = b.difference(a).indices().collect();
            let chain = ChainPath::from_steps(a, &gap)?;
            let mc = sumrules::multi_conditional(i, a, b)?;
            f.record((mc + sumrules::chain_sum(i, &chain)?).abs());
        }
    }
    families.push(f.finish());

    Ok(VerificationReport { families })
}

fn same_endpoint_residual(func: &LatticeFunction, chain: &ChainPath, f: &mut Family) -> Result<()> {
    let sum = sumrules::chain_sum(func, chain)?;
    f.record((sum + func.get(chain.bottom()) - func.get(chain.top())).abs());
    Ok(())
}
