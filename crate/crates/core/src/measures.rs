//! Joint entropy, interaction information, multi-information and the
//! differential interaction information, with the dualities linking them.
//!
//! Sign convention: `I(ν) = Σ_{τ⊆ν} (-1)^(|τ|+1) H(τ)`, so `I` of a pair is
//! the mutual information and `I` of a singleton is its entropy. Every
//! measure is 0 on the empty set.
//!
//! Most quantities here can be reached by more than one route; the
//! functions that evaluate an alternative route exist so the routes can be
//! compared (see [`crate::verify`]).

use std::sync::Arc;

use serde::Serialize;

use crate::distributions::{JointDistribution, LogBase};
use crate::error::{Error, Result};
use crate::lattice::{ChainPath, Direction, PowerSetLattice, SubsetMask, DEFAULT_MAX_DIM};
use crate::transforms::{signed_transform, LatticeFunction, Role, SignConvention};
use crate::DISTRIBUTIONAL_TOLERANCE;

/// `H`, `I` and `M` over one lattice.
#[derive(Debug, Clone)]
pub struct MeasureTable {
    entropy: LatticeFunction,
    interaction: LatticeFunction,
    multi: LatticeFunction,
    source: Option<Arc<JointDistribution>>,
    base: LogBase,
}

impl MeasureTable {
    pub fn from_distribution(d: &JointDistribution) -> Result<Self> {
        Self::from_distribution_with(d, LogBase::Bits, DEFAULT_MAX_DIM)
    }

    pub fn from_distribution_with(d: &JointDistribution, base: LogBase, max_dim: usize) -> Result<Self> {
        let h = d.entropy_lattice_with(base, max_dim)?;
        let mut table = Self::from_entropy(h)?;
        table.source = Some(Arc::new(d.clone()));
        table.base = base;
        Ok(table)
    }

    /// Builds `I` and `M` from an entropy-tagged function alone.
    pub fn from_entropy(entropy: LatticeFunction) -> Result<Self> {
        let interaction = interaction_lattice(&entropy)?;
        let multi = multi_lattice(&entropy)?;
        Ok(MeasureTable {
            entropy,
            interaction,
            multi,
            source: None,
            base: LogBase::Bits,
        })
    }

    pub fn entropy(&self) -> &LatticeFunction {
        &self.entropy
    }

    pub fn interaction(&self) -> &LatticeFunction {
        &self.interaction
    }

    pub fn multi(&self) -> &LatticeFunction {
        &self.multi
    }

    pub fn source(&self) -> Option<&JointDistribution> {
        self.source.as_deref()
    }

    pub fn base(&self) -> LogBase {
        self.base
    }

    pub fn lattice(&self) -> &Arc<PowerSetLattice> {
        self.entropy.lattice()
    }

    pub fn dim(&self) -> usize {
        self.entropy.dim()
    }

    fn check(&self, mask: SubsetMask) -> Result<()> {
        self.lattice().check(mask)
    }

    fn check_added(&self, base: SubsetMask, added: usize) -> Result<()> {
        self.check(base)?;
        self.lattice().check_index(added)?;
        if base.contains(added) {
            return Err(Error::IndexInSet { index: added, base });
        }
        Ok(())
    }

    /// `Δ(base; added)` by the interaction-difference route.
    fn delta_value(&self, base: SubsetMask, added: usize) -> f64 {
        self.interaction.get(base.with(added)) - self.interaction.get(base)
    }
}

fn check_empty_zero(f: &LatticeFunction) -> Result<()> {
    let v = f.get(SubsetMask::EMPTY);
    if v != 0.0 {
        return Err(Error::NonzeroEmptyValue(v));
    }
    Ok(())
}

/// `I(ν) = Σ_{τ⊆ν} (-1)^(|τ|+1) H(τ)` on every node.
pub fn interaction_lattice(h: &LatticeFunction) -> Result<LatticeFunction> {
    h.expect_role(Role::Entropy)?;
    check_empty_zero(h)?;
    Ok(signed_transform(h, SignConvention::PlusOne).with_role(Role::Interaction))
}

/// `H(ν) = Σ_{τ⊆ν} (-1)^(|τ|+1) I(τ)`; inverse of [`interaction_lattice`].
pub fn entropy_from_interaction(i: &LatticeFunction) -> Result<LatticeFunction> {
    i.expect_role(Role::Interaction)?;
    Ok(signed_transform(i, SignConvention::PlusOne).with_role(Role::Entropy))
}

/// Total correlation `M(ν) = Σ_{x∈ν} H(x) - H(ν)`.
pub fn multi_information(h: &LatticeFunction, nu: SubsetMask) -> f64 {
    let singles: f64 = nu.indices().map(|i| h.get(SubsetMask::singleton(i))).sum();
    if nu.is_empty() {
        0.0
    } else {
        singles - h.get(nu)
    }
}

/// [`multi_information`] on every node, tagged as multi-information.
pub fn multi_lattice(h: &LatticeFunction) -> Result<LatticeFunction> {
    h.expect_role(Role::Entropy)?;
    LatticeFunction::from_fn(Arc::clone(h.lattice()), Role::Multi, |nu| multi_information(h, nu))
}

/// `M(ν) = Σ_{τ⊆ν, |τ|≥2} (-1)^|τ| I(τ)`.
pub fn multi_from_interaction(i: &LatticeFunction, nu: SubsetMask) -> f64 {
    nu.submasks()
        .filter(|t| t.len() >= 2)
        .map(|t| t.parity_sign() as f64 * i.get(t))
        .sum()
}

/// `I(ν) = Σ_{τ⊆ν, |τ|≥2} (-1)^|τ| M(τ)`; only valid for `|ν| ≥ 2`.
pub fn interaction_from_multi(m: &LatticeFunction, nu: SubsetMask) -> Result<f64> {
    m.lattice().check(nu)?;
    if nu.len() < 2 {
        return Err(Error::TooFewVariables {
            what: "interaction from multi-information",
            needed: 2,
            found: nu.len(),
        });
    }
    Ok(multi_from_interaction(m, nu))
}

/// The change in interaction information when `added` joins `base`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaValue {
    pub base: SubsetMask,
    pub added: usize,
    pub value: f64,
}

/// `Δ(base; added)` evaluated three ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaRoutes {
    /// `I(base ∪ {x}) - I(base)`
    pub difference: f64,
    /// `Σ_{τ ⊆ base∪{x}, x∈τ} (-1)^(|τ|+1) H(τ)`
    pub entropy_sum: f64,
    /// `H(x) + Σ_{∅≠τ⊆base} (-1)^|τ| H(τ ∪ {x})`
    pub rewritten: f64,
}

impl DeltaRoutes {
    pub fn spread(&self) -> f64 {
        let v = [self.difference, self.entropy_sum, self.rewritten];
        let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = v.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }
}

pub fn delta_routes(table: &MeasureTable, base: SubsetMask, added: usize) -> Result<DeltaRoutes> {
    table.check_added(base, added)?;
    let h = table.entropy();
    let x = SubsetMask::singleton(added);

    let entropy_sum = base
        .submasks()
        .map(|s| {
            let tau = s.union(x);
            tau.sign_plus() as f64 * h.get(tau)
        })
        .sum();
    let rewritten = h.get(x)
        + base
            .submasks()
            .skip(1)
            .map(|tau| tau.parity_sign() as f64 * h.get(tau.union(x)))
            .sum::<f64>();

    Ok(DeltaRoutes {
        difference: table.delta_value(base, added),
        entropy_sum,
        rewritten,
    })
}

/// `Δ(base; added) = I(base ∪ {added}) - I(base) = -I(base | added)`.
///
/// All three routes of [`delta_routes`] are evaluated; a spread above
/// `1e-9` is reported as [`Error::RoutesDisagree`].
pub fn delta(table: &MeasureTable, base: SubsetMask, added: usize) -> Result<DeltaValue> {
    let routes = delta_routes(table, base, added)?;
    let spread = routes.spread();
    if spread > DISTRIBUTIONAL_TOLERANCE {
        return Err(Error::RoutesDisagree { spread });
    }
    Ok(DeltaValue {
        base,
        added,
        value: routes.difference,
    })
}

/// `Δ(base; added) = Σ_{τ ∋ added, |τ|≥2} (-1)^|τ| M(τ)`, valid for `|base| ≥ 2`.
pub fn delta_from_multi(m: &LatticeFunction, base: SubsetMask, added: usize) -> Result<f64> {
    m.lattice().check(base)?;
    m.lattice().check_index(added)?;
    if base.contains(added) {
        return Err(Error::IndexInSet { index: added, base });
    }
    if base.len() < 2 {
        return Err(Error::TooFewVariables {
            what: "delta from multi-information",
            needed: 2,
            found: base.len(),
        });
    }
    Ok(base
        .submasks()
        .skip(1)
        .map(|s| {
            let tau = s.with(added);
            tau.parity_sign() as f64 * m.get(tau)
        })
        .sum())
}

/// `|[H(base ∪ {x}) - H(x)] - Σ_{∅≠τ⊆base} (-1)^|τ| Δ(τ; x)|`.
pub fn delta_duality_residual(table: &MeasureTable, base: SubsetMask, added: usize) -> Result<f64> {
    table.check_added(base, added)?;
    if base.is_empty() {
        return Err(Error::TooFewVariables {
            what: "delta-entropy duality",
            needed: 1,
            found: 0,
        });
    }
    let h = table.entropy();
    let x = SubsetMask::singleton(added);
    let lhs = h.get(base.union(x)) - h.get(x);
    let rhs: f64 = base
        .submasks()
        .skip(1)
        .map(|tau| tau.parity_sign() as f64 * table.delta_value(tau, added))
        .sum();
    Ok((lhs - rhs).abs())
}

/// Residuals of the four three-variable Δ–H identities for variables
/// `(a, b, c)` with `c` the added variable:
///
/// 1. `Δ(ab; c) - H(c) = H(abc) - H(ac) - H(bc)`
/// 2. `Δ(a; c) = H(c) - H(ac)`
/// 3. `Δ(b; c) = H(c) - H(bc)`
/// 4. `H(abc) - H(c) = Δ(ab; c) - Δ(a; c) - Δ(b; c)`
pub fn three_variable_residuals(table: &MeasureTable, vars: [usize; 3]) -> Result<[f64; 4]> {
    let [a, b, c] = vars;
    for &v in &vars {
        table.lattice().check_index(v)?;
    }
    if a == b || b == c || a == c {
        return Err(Error::InvalidAssignment(format!("variables {vars:?} must be distinct")));
    }
    let h = |ix: &[usize]| table.entropy().get(SubsetMask::from_indices(ix.iter().copied()));
    let d_ab = table.delta_value(SubsetMask::from_indices([a, b]), c);
    let d_a = table.delta_value(SubsetMask::singleton(a), c);
    let d_b = table.delta_value(SubsetMask::singleton(b), c);
    Ok([
        ((d_ab - h(&[c])) - (h(&[a, b, c]) - h(&[a, c]) - h(&[b, c]))).abs(),
        (d_a - (h(&[c]) - h(&[a, c]))).abs(),
        (d_b - (h(&[c]) - h(&[b, c]))).abs(),
        ((h(&[a, b, c]) - h(&[c])) - (d_ab - d_a - d_b)).abs(),
    ])
}

fn check_disjoint(table: &MeasureTable, v: SubsetMask, w: SubsetMask) -> Result<()> {
    table.check(v)?;
    table.check(w)?;
    if v.is_empty() {
        return Err(Error::TooFewVariables {
            what: "conditional interaction",
            needed: 1,
            found: 0,
        });
    }
    if !v.intersection(w).is_empty() {
        return Err(Error::Overlap { a: v, b: w });
    }
    Ok(())
}

/// Conditional interaction information `I(v | W)` from lattice values:
/// `Σ_{S⊆W} (-1)^|S| I(v ∪ S)`.
///
/// For a single conditioning variable this is the edge difference
/// `I(v) - I(v ∪ {x})`; each further conditioner applies the same
/// difference again inside the filter above the previous ones.
pub fn conditional_interaction(table: &MeasureTable, v: SubsetMask, w: SubsetMask) -> Result<f64> {
    check_disjoint(table, v, w)?;
    let i = table.interaction();
    Ok(w.submasks()
        .map(|s| s.parity_sign() as f64 * i.get(v.union(s)))
        .sum())
}

/// Interaction information of the variables in `v` under `d`.
pub fn interaction_of(d: &JointDistribution, v: SubsetMask, base: LogBase) -> f64 {
    v.submasks()
        .skip(1)
        .map(|tau| tau.sign_plus() as f64 * d.subset_entropy(tau, base))
        .sum()
}

/// `Σ_w p(w) · I(v)` under `d | W = w`: the expectation route for
/// [`conditional_interaction`], computed from conditional slices.
pub fn conditional_interaction_by_expectation(
    d: &JointDistribution,
    v: SubsetMask,
    w: SubsetMask,
    base: LogBase,
) -> Result<f64> {
    let full = SubsetMask::full(d.dim());
    for m in [v, w] {
        if !m.is_subset_of(full) {
            return Err(Error::MaskOutOfRange { mask: m, dim: d.dim() });
        }
    }
    if v.is_empty() {
        return Err(Error::TooFewVariables {
            what: "conditional interaction",
            needed: 1,
            found: 0,
        });
    }
    if !v.intersection(w).is_empty() {
        return Err(Error::Overlap { a: v, b: w });
    }
    if w.is_empty() {
        return Ok(interaction_of(d, v, base));
    }
    // renumber v inside the slice, which keeps the unassigned variables in order
    let free: Vec<usize> = full.difference(w).indices().collect();
    let v_local = SubsetMask::from_indices(
        free.iter()
            .enumerate()
            .filter(|(_, &src)| v.contains(src))
            .map(|(k, _)| k),
    );
    let w_idx: Vec<usize> = w.indices().collect();
    let mut total = 0.0;
    for (tuple, p) in d.marginal(w)?.support() {
        let assignment: Vec<(usize, usize)> = w_idx.iter().copied().zip(tuple.iter().copied()).collect();
        let slice = d.slice_condition(&assignment)?;
        total += p * interaction_of(&slice, v_local, base);
    }
    Ok(total)
}

/// One term of a chain decomposition of `I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ChainTerm {
    /// `H(x)` of the starting singleton.
    Entropy { variable: usize, value: f64 },
    Delta(DeltaValue),
}

impl ChainTerm {
    pub fn value(&self) -> f64 {
        match self {
            ChainTerm::Entropy { value, .. } => *value,
            ChainTerm::Delta(d) => d.value,
        }
    }
}

/// `I(top) = H(first) + Σ Δ` along an ascending chain that starts at a
/// singleton.
pub fn chain_decomposition(table: &MeasureTable, chain: &ChainPath) -> Result<Vec<ChainTerm>> {
    if chain.direction() != Direction::Ascending {
        return Err(Error::MalformedChain("decomposition needs an ascending chain".into()));
    }
    let first = chain.bottom();
    if first.len() != 1 {
        return Err(Error::ChainStart(first));
    }
    table.check(chain.top())?;
    let variable = first.indices().next().unwrap();
    let mut terms = vec![ChainTerm::Entropy {
        variable,
        value: table.entropy().get(first),
    }];
    for step in chain.steps() {
        terms.push(ChainTerm::Delta(delta(table, step.lower, step.added)?));
    }
    Ok(terms)
}

/// Product of `Δ(ν \ {x}; x)` over `x ∈ ν`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetrizedDelta {
    pub node: SubsetMask,
    pub factors: Vec<DeltaValue>,
    pub product: f64,
    /// Every factor exceeds the zero tolerance in magnitude.
    pub collectively_dependent: bool,
}

pub fn symmetrized_delta(table: &MeasureTable, nu: SubsetMask) -> Result<SymmetrizedDelta> {
    table.check(nu)?;
    if nu.len() < 2 {
        return Err(Error::TooFewVariables {
            what: "symmetrized delta",
            needed: 2,
            found: nu.len(),
        });
    }
    let factors = nu
        .indices()
        .map(|x| delta(table, nu.without(x), x))
        .collect::<Result<Vec<_>>>()?;
    let product = factors.iter().map(|d| d.value).product();
    let collectively_dependent = factors.iter().all(|d| d.value.abs() > DISTRIBUTIONAL_TOLERANCE);
    Ok(SymmetrizedDelta {
        node: nu,
        factors,
        product,
        collectively_dependent,
    })
}
