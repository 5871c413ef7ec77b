//! Subset-sum (zeta), Möbius and signed transforms on lattice functions.
//!
//! The default implementations are the in-place dimension-by-dimension
//! butterflies, `O(n 2^n)`. The [`naive`] module evaluates the defining
//! sums directly over submasks, `O(3^n)`, and is kept as the reference the
//! fast path is checked against.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{PowerSetLattice, SubsetMask};

/// What a [`LatticeFunction`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    Entropy,
    Interaction,
    Multi,
    Generic,
}

/// A finite real value on every node of a power-set lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeFunction {
    lattice: Arc<PowerSetLattice>,
    values: Vec<f64>,
    role: Role,
}

impl LatticeFunction {
    pub fn new(lattice: Arc<PowerSetLattice>, values: Vec<f64>, role: Role) -> Result<Self> {
        if values.len() != lattice.node_count() {
            return Err(Error::LengthMismatch {
                expected: lattice.node_count(),
                found: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                mask: SubsetMask::from_bits(i as u32),
            });
        }
        Ok(LatticeFunction {
            lattice,
            values,
            role,
        })
    }

    pub fn from_fn(
        lattice: Arc<PowerSetLattice>,
        role: Role,
        f: impl FnMut(SubsetMask) -> f64,
    ) -> Result<Self> {
        let values = lattice.nodes().map(f).collect();
        Self::new(lattice, values, role)
    }

    pub fn zeros(lattice: Arc<PowerSetLattice>, role: Role) -> Self {
        let values = vec![0.0; lattice.node_count()];
        LatticeFunction {
            lattice,
            values,
            role,
        }
    }

    /// Value at a node. Panics if the mask lies outside the lattice.
    pub fn get(&self, mask: SubsetMask) -> f64 {
        self.values[mask.index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn lattice(&self) -> &Arc<PowerSetLattice> {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    pub fn expect_role(&self, expected: Role) -> Result<()> {
        if self.role == expected {
            Ok(())
        } else {
            Err(Error::WrongRole {
                expected,
                found: self.role,
            })
        }
    }

    pub fn same_lattice(&self, other: &LatticeFunction) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) || *self.lattice == *other.lattice
    }

    pub fn max_abs_diff(&self, other: &LatticeFunction) -> Result<f64> {
        if !self.same_lattice(other) {
            return Err(Error::LatticeMismatch);
        }
        Ok(max_abs_diff(&self.values, &other.values))
    }

    /// `max |self - other| / max(max |other|, 1e-300)`.
    pub fn max_rel_diff(&self, other: &LatticeFunction) -> Result<f64> {
        let abs = self.max_abs_diff(other)?;
        let scale = other.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        Ok(if scale == 0.0 { abs } else { abs / scale })
    }

    fn derived(&self, values: Vec<f64>, role: Role) -> Self {
        LatticeFunction {
            lattice: Arc::clone(&self.lattice),
            values,
            role,
        }
    }
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Sign weighting of a signed subset transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignConvention {
    /// `f(ν) = Σ_{τ⊆ν} (-1)^|τ| h(τ)`
    Plain,
    /// `f(ν) = Σ_{τ⊆ν} (-1)^(|τ|+1) h(τ)`, the interaction-information weighting
    PlusOne,
}

/// In-place subset-sum transform over a table of length `2^n`.
pub fn zeta_in_place(values: &mut [f64]) {
    butterfly(values, |lo, hi| *hi += lo);
}

/// In-place inverse of [`zeta_in_place`].
pub fn mobius_in_place(values: &mut [f64]) {
    butterfly(values, |lo, hi| *hi -= lo);
}

fn butterfly(values: &mut [f64], op: impl Fn(f64, &mut f64)) {
    assert!(values.len().is_power_of_two(), "table length must be 2^n");
    let mut half = 1;
    while half < values.len() {
        for block in values.chunks_exact_mut(half * 2) {
            let (lo, hi) = block.split_at_mut(half);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                op(*l, h);
            }
        }
        half *= 2;
    }
}

fn apply_parity(values: &mut [f64]) {
    for (i, v) in values.iter_mut().enumerate() {
        if (i as u32).count_ones() % 2 == 1 {
            *v = -*v;
        }
    }
}

/// In-place signed subset transform.
pub fn signed_in_place(values: &mut [f64], convention: SignConvention) {
    apply_parity(values);
    zeta_in_place(values);
    if convention == SignConvention::PlusOne {
        for v in values.iter_mut() {
            *v = -*v;
        }
    }
}

/// `f(ν) = Σ_{τ⊆ν} g(τ)`.
pub fn zeta(g: &LatticeFunction) -> LatticeFunction {
    let mut values = g.values.clone();
    zeta_in_place(&mut values);
    g.derived(values, Role::Generic)
}

/// `g(ν) = Σ_{τ⊆ν} (-1)^(|τ|+|ν|) f(τ)`, the inverse of [`zeta`].
pub fn mobius_invert(f: &LatticeFunction) -> LatticeFunction {
    let mut values = f.values.clone();
    mobius_in_place(&mut values);
    f.derived(values, Role::Generic)
}

/// Signed subset sum; an involution under either convention.
pub fn signed_transform(h: &LatticeFunction, convention: SignConvention) -> LatticeFunction {
    let mut values = h.values.clone();
    signed_in_place(&mut values, convention);
    h.derived(values, Role::Generic)
}

/// Definition-level `O(3^n)` evaluations of the transforms.
pub mod naive {
    use super::*;

    pub fn zeta(values: &[f64]) -> Vec<f64> {
        (0..values.len() as u32)
            .map(|nu| {
                SubsetMask::from_bits(nu)
                    .submasks()
                    .map(|tau| values[tau.index()])
                    .sum()
            })
            .collect()
    }

    pub fn mobius_invert(values: &[f64]) -> Vec<f64> {
        (0..values.len() as u32)
            .map(|nu| {
                let nu = SubsetMask::from_bits(nu);
                nu.submasks()
                    .map(|tau| {
                        let mu = crate::lattice::mobius(tau, nu).unwrap() as f64;
                        mu * values[tau.index()]
                    })
                    .sum()
            })
            .collect()
    }

    pub fn signed(values: &[f64], convention: SignConvention) -> Vec<f64> {
        (0..values.len() as u32)
            .map(|nu| {
                SubsetMask::from_bits(nu)
                    .submasks()
                    .map(|tau| {
                        let w = match convention {
                            SignConvention::Plain => tau.parity_sign(),
                            SignConvention::PlusOne => tau.sign_plus(),
                        };
                        w as f64 * values[tau.index()]
                    })
                    .sum()
            })
            .collect()
    }

    /// `Σ_{σ⊆τ⊆ν} (-1)^(|τ|+|σ|) h(σ)`, which collapses to `h(ν)`.
    pub fn double_sum(values: &[f64], nu: SubsetMask) -> f64 {
        let mut total = 0.0;
        for tau in nu.submasks() {
            for sigma in tau.submasks() {
                let sign = if (tau.len() + sigma.len()) % 2 == 0 { 1.0 } else { -1.0 };
                total += sign * values[sigma.index()];
            }
        }
        total
    }
}

/// Signed term multiplicities of the substituted double sum: entry
/// `(σ, τ)` is `(-1)^(|τ|+|σ|)` when `σ ⊆ τ`, otherwise no term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancellationTable {
    n: usize,
    order: Vec<SubsetMask>,
    entries: Vec<Vec<Option<i8>>>,
}

impl CancellationTable {
    pub const MIN_DIM: usize = 1;
    pub const MAX_DIM: usize = 6;

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row and column order: full set first, then by descending
    /// cardinality, ties in lexicographic order of members.
    pub fn order(&self) -> &[SubsetMask] {
        &self.order
    }

    /// `entries()[row][col]`, rows σ and columns τ both in [`Self::order`].
    pub fn entries(&self) -> &[Vec<Option<i8>>] {
        &self.entries
    }

    pub fn entry(&self, sigma: SubsetMask, tau: SubsetMask) -> Option<i8> {
        let r = self.order.iter().position(|&m| m == sigma)?;
        let c = self.order.iter().position(|&m| m == tau)?;
        self.entries[r][c]
    }

    /// Net multiplicity of `h(σ)` in the double sum for each row.
    pub fn row_sums(&self) -> Vec<i64> {
        self.entries
            .iter()
            .map(|row| row.iter().flatten().map(|&e| e as i64).sum())
            .collect()
    }
}

/// Builds the cancellation table for `1 ≤ n ≤ 6` variables.
pub fn cancellation_table(n: usize) -> Result<CancellationTable> {
    if !(CancellationTable::MIN_DIM..=CancellationTable::MAX_DIM).contains(&n) {
        return Err(Error::DimensionRange {
            n,
            min: CancellationTable::MIN_DIM,
            max: CancellationTable::MAX_DIM,
        });
    }
    let mut order: Vec<SubsetMask> = (0..1u32 << n).map(SubsetMask::from_bits).collect();
    order.sort_by_key(|m| (std::cmp::Reverse(m.len()), m.indices().collect::<Vec<_>>()));
    let entries = order
        .iter()
        .map(|&sigma| {
            order
                .iter()
                .map(|&tau| {
                    sigma.is_subset_of(tau).then(|| {
                        if (tau.len() + sigma.len()) % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                })
                .collect()
        })
        .collect();
    Ok(CancellationTable { n, order, entries })
}
