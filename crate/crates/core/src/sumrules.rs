//! Edge-weighted lattice graphs and the sum rules that follow from chain
//! sums being path independent.
//!
//! Any lattice function `F` induces weights `F(τ ∪ {x}) - F(τ)` on the
//! covering edges. A chain sum then telescopes to `F(end) - F(start)`, so
//! two chains with the same endpoints agree (first kind of rule), and a
//! chain sum plus `F(start)` recovers `F(end)` (second kind).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{ChainPath, CoveringEdge, Direction, SubsetMask};
use crate::transforms::{LatticeFunction, Role};

/// Chains longer than this are not enumerated.
pub const MAX_CHAIN_SPAN: usize = 7;

/// Edge weights derived on demand from a base function, so they can never
/// drift from it.
#[derive(Debug, Clone, Copy)]
pub struct WeightedLatticeGraph<'a> {
    function: &'a LatticeFunction,
}

impl<'a> WeightedLatticeGraph<'a> {
    pub fn new(function: &'a LatticeFunction) -> Self {
        WeightedLatticeGraph { function }
    }

    pub fn function(&self) -> &LatticeFunction {
        self.function
    }

    pub fn weight(&self, edge: &CoveringEdge) -> f64 {
        self.function.get(edge.upper) - self.function.get(edge.lower)
    }

    /// `(edge, weight)` for every covering edge of the lattice.
    pub fn edges(&self) -> Vec<(CoveringEdge, f64)> {
        self.function
            .lattice()
            .covering_edges()
            .into_iter()
            .map(|e| {
                let w = self.weight(&e);
                (e, w)
            })
            .collect()
    }
}

/// `F(τ ∪ {x}) - F(τ)`; for `F = I` this is `Δ(τ; x)`.
pub fn edge_weight(f: &LatticeFunction, tau: SubsetMask, x: usize) -> Result<f64> {
    f.lattice().check(tau)?;
    f.lattice().check_index(x)?;
    if tau.contains(x) {
        return Err(Error::IndexInSet { index: x, base: tau });
    }
    Ok(f.get(tau.with(x)) - f.get(tau))
}

/// Signed sum of edge weights along a chain; descending traversal
/// subtracts each weight.
pub fn chain_sum(f: &LatticeFunction, chain: &ChainPath) -> Result<f64> {
    if !f.lattice().contains(chain.top()) {
        return Err(Error::MalformedChain(format!(
            "{} is outside the {}-variable lattice",
            chain.top(),
            f.dim()
        )));
    }
    let graph = WeightedLatticeGraph::new(f);
    let sum: f64 = chain.steps().map(|e| graph.weight(&e)).sum();
    Ok(match chain.direction() {
        Direction::Ascending => sum,
        Direction::Descending => -sum,
    })
}

fn check_span(f: &LatticeFunction, a: SubsetMask, b: SubsetMask) -> Result<()> {
    f.lattice().check(a)?;
    f.lattice().check(b)?;
    if !a.is_subset_of(b) {
        return Err(Error::NotSubset { sub: a, sup: b });
    }
    let span = b.difference(a).len();
    if span > MAX_CHAIN_SPAN {
        return Err(Error::ChainSpanExceeded {
            span,
            max: MAX_CHAIN_SPAN,
        });
    }
    Ok(())
}

/// Spread of chain sums over every chain between two endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathIndependence {
    pub start: SubsetMask,
    pub end: SubsetMask,
    pub chains: usize,
    pub min: f64,
    pub max: f64,
}

impl PathIndependence {
    pub fn spread(&self) -> f64 {
        self.max - self.min
    }
}

pub fn verify_path_independence(f: &LatticeFunction, a: SubsetMask, b: SubsetMask) -> Result<PathIndependence> {
    check_span(f, a, b)?;
    let chains = f.lattice().enumerate_chains(a, b)?;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for c in &chains {
        let s = chain_sum(f, c)?;
        min = min.min(s);
        max = max.max(s);
    }
    Ok(PathIndependence {
        start: a,
        end: b,
        chains: chains.len(),
        min,
        max,
    })
}

/// One instance of a sum rule with its residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleInstance {
    pub rule_id: String,
    pub start: SubsetMask,
    pub end: SubsetMask,
    /// Indices added along the chain that was summed.
    pub chain: Vec<usize>,
    pub chain_sum: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumRuleReport {
    pub role: Role,
    pub rules: Vec<RuleInstance>,
}

impl SumRuleReport {
    pub fn max_residual(&self) -> f64 {
        self.rules.iter().fold(0.0, |a, r| a.max(r.residual))
    }
}

/// Second kind of sum rule: for each start `s`,
/// `chain_sum(s → end) + F(s) = F(end)`, checked on every chain from `s`.
pub fn sum_rule_same_endpoint(f: &LatticeFunction, starts: &[SubsetMask], end: SubsetMask) -> Result<SumRuleReport> {
    let mut rules = Vec::new();
    for &s in starts {
        check_span(f, s, end)?;
        for chain in f.lattice().enumerate_chains(s, end)? {
            let sum = chain_sum(f, &chain)?;
            rules.push(RuleInstance {
                rule_id: format!("same-end:{}->{}", s.bits(), end.bits()),
                start: s,
                end,
                chain: chain.added_indices(),
                chain_sum: sum,
                residual: (sum + f.get(s) - f.get(end)).abs(),
            });
        }
    }
    Ok(SumRuleReport {
        role: f.role(),
        rules,
    })
}

/// `I(a) - I(b)` for comparable `a ⊊ b`: the negated chain sum between the
/// two sites. When `b = a ∪ {x}` this is the conditional `I(a | x)`.
pub fn multi_conditional(i: &LatticeFunction, a: SubsetMask, b: SubsetMask) -> Result<f64> {
    i.lattice().check(a)?;
    i.lattice().check(b)?;
    if a.is_empty() {
        return Err(Error::TooFewVariables {
            what: "multi-conditional",
            needed: 1,
            found: 0,
        });
    }
    if !a.is_subset_of(b) || a == b {
        return Err(Error::Incomparable { a, b });
    }
    Ok(i.get(a) - i.get(b))
}
