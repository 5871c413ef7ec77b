//! The power-set lattice of a variable set.
//!
//! Nodes are [`SubsetMask`]s: bit `i` is set when variable `i` belongs to
//! the subset. Every lattice-wide table in this crate is a dense array
//! indexed by the mask's integer encoding, so node `0` is the empty set and
//! node `2^n - 1` is the full set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default maximum lattice dimension (about 10^6 nodes).
pub const DEFAULT_MAX_DIM: usize = 20;

/// Upper bound on any configured cap; masks are 32-bit.
pub const HARD_MAX_DIM: usize = 30;

/// Largest `|b \ a|` for which [`PowerSetLattice::enumerate_chains`] will
/// materialise every chain.
pub const MAX_ENUMERATED_SPAN: usize = 10;

/// A subset of variable indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Position of this node in any dense lattice table.
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < 32, "variable index {i} does not fit a 32-bit mask");
        SubsetMask(1 << i)
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= 32);
        if n == 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(SubsetMask::EMPTY, |m, i| m.with(i))
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub const fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub const fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Self {
        self.union(SubsetMask::singleton(i))
    }

    pub fn without(self, i: usize) -> Self {
        self.difference(SubsetMask::singleton(i))
    }

    /// Member indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// `+1` for odd cardinality, `-1` for even: the weight `(-1)^(|τ|+1)`.
    pub fn sign_plus(self) -> i32 {
        if self.len() % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// `(-1)^|τ|`.
    pub fn parity_sign(self) -> i32 {
        -self.sign_plus()
    }

    /// All subsets of `self`, ascending by encoding.
    pub fn submasks(self) -> Submasks {
        Submasks {
            sup: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the subsets of a mask in ascending encoding.
///
/// Uses the standard `(s - sup) & sup` successor trick, which visits
/// exactly the `2^|sup|` submasks in increasing order.
#[derive(Debug, Clone)]
pub struct Submasks {
    sup: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == self.sup {
            None
        } else {
            Some(cur.wrapping_sub(self.sup) & self.sup)
        };
        Some(SubsetMask(cur))
    }
}

/// `(-1)^(|τ|+1)` for a subset `τ`.
pub fn sign_plus(tau: SubsetMask) -> i32 {
    tau.sign_plus()
}

/// The symmetrised Möbius function `(-1)^(|τ|+|ν|)` of the inclusion
/// order; factors as `sign_plus(τ) * sign_plus(ν)`.
pub fn mobius(tau: SubsetMask, nu: SubsetMask) -> Result<i32> {
    if !tau.is_subset_of(nu) {
        return Err(Error::NotSubset { sub: tau, sup: nu });
    }
    Ok(if (tau.len() + nu.len()).is_multiple_of(2) { 1 } else { -1 })
}

/// A covering pair `lower ⋖ upper = lower ∪ {added}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoveringEdge {
    pub lower: SubsetMask,
    pub upper: SubsetMask,
    pub added: usize,
}

/// Traversal direction of a [`ChainPath`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Ascending,
    Descending,
}

/// A chain of covering steps. Nodes are always stored bottom to top; the
/// direction says which way the chain is walked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainPath {
    nodes: Vec<SubsetMask>,
    direction: Direction,
}

impl ChainPath {
    /// Builds an ascending chain, checking the covering relation at every step.
    pub fn new(nodes: Vec<SubsetMask>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::MalformedChain("chain has no nodes".into()));
        }
        for w in nodes.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if !lo.is_subset_of(hi) || hi.len() != lo.len() + 1 {
                return Err(Error::MalformedChain(format!(
                    "{hi} does not cover {lo}"
                )));
            }
        }
        Ok(ChainPath {
            nodes,
            direction: Direction::Ascending,
        })
    }

    /// Starts at `start` and adds the given indices one at a time.
    pub fn from_steps(start: SubsetMask, added: &[usize]) -> Result<Self> {
        let mut nodes = Vec::with_capacity(added.len() + 1);
        nodes.push(start);
        let mut cur = start;
        for &x in added {
            if cur.contains(x) {
                return Err(Error::IndexInSet { index: x, base: cur });
            }
            cur = cur.with(x);
            nodes.push(cur);
        }
        ChainPath::new(nodes)
    }

    /// The same nodes walked in the opposite direction.
    pub fn reversed(&self) -> Self {
        ChainPath {
            nodes: self.nodes.clone(),
            direction: match self.direction {
                Direction::Ascending => Direction::Descending,
                Direction::Descending => Direction::Ascending,
            },
        }
    }

    /// Nodes from bottom to top, regardless of direction.
    pub fn nodes(&self) -> &[SubsetMask] {
        &self.nodes
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn bottom(&self) -> SubsetMask {
        self.nodes[0]
    }

    pub fn top(&self) -> SubsetMask {
        *self.nodes.last().unwrap()
    }

    pub fn start(&self) -> SubsetMask {
        match self.direction {
            Direction::Ascending => self.bottom(),
            Direction::Descending => self.top(),
        }
    }

    pub fn end(&self) -> SubsetMask {
        match self.direction {
            Direction::Ascending => self.top(),
            Direction::Descending => self.bottom(),
        }
    }

    /// Number of covering steps.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Covering steps from bottom to top.
    pub fn steps(&self) -> impl Iterator<Item = CoveringEdge> + '_ {
        self.nodes.windows(2).map(|w| CoveringEdge {
            lower: w[0],
            upper: w[1],
            added: w[1].difference(w[0]).bits().trailing_zeros() as usize,
        })
    }

    /// Indices added along the chain, bottom to top.
    pub fn added_indices(&self) -> Vec<usize> {
        self.steps().map(|e| e.added).collect()
    }
}

/// The Boolean lattice of all subsets of `n` labelled variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSetLattice {
    labels: Vec<String>,
}

impl PowerSetLattice {
    /// A lattice over `X1..Xn`, subject to the default cap.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_labels((1..=n).map(|i| format!("X{i}")).collect())
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        Self::with_labels_capped(labels, DEFAULT_MAX_DIM)
    }

    pub fn with_labels_capped(labels: Vec<String>, cap: usize) -> Result<Self> {
        let cap = cap.min(HARD_MAX_DIM);
        if labels.len() > cap {
            return Err(Error::DimensionExceeded {
                n: labels.len(),
                cap,
            });
        }
        Ok(PowerSetLattice { labels })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_count(&self) -> usize {
        1 << self.dim()
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.dim())
    }

    /// All nodes, ascending by encoding.
    pub fn nodes(&self) -> impl Iterator<Item = SubsetMask> {
        (0..self.node_count() as u32).map(SubsetMask::from_bits)
    }

    pub fn contains(&self, mask: SubsetMask) -> bool {
        mask.is_subset_of(self.full())
    }

    pub fn check(&self, mask: SubsetMask) -> Result<()> {
        if self.contains(mask) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                mask,
                dim: self.dim(),
            })
        }
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                dim: self.dim(),
            })
        }
    }

    /// Human-readable member list, e.g. `{X1,X3}`; the empty set is `∅`.
    pub fn format_mask(&self, mask: SubsetMask) -> String {
        if mask.is_empty() {
            return "∅".to_string();
        }
        let names: Vec<&str> = mask.indices().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn submasks(&self, nu: SubsetMask) -> Result<Vec<SubsetMask>> {
        self.check(nu)?;
        Ok(nu.submasks().collect())
    }

    /// Every covering pair, ordered by lower node then by added index.
    pub fn covering_edges(&self) -> Vec<CoveringEdge> {
        let n = self.dim();
        let mut edges = Vec::with_capacity(n << n.saturating_sub(1));
        for lower in self.nodes() {
            for added in 0..n {
                if !lower.contains(added) {
                    edges.push(CoveringEdge {
                        lower,
                        upper: lower.with(added),
                        added,
                    });
                }
            }
        }
        edges
    }

    /// All chains of covering steps from `a` up to `b`, in lexicographic
    /// order of the added-index sequence. There are `|b \ a|!` of them.
    pub fn enumerate_chains(&self, a: SubsetMask, b: SubsetMask) -> Result<Vec<ChainPath>> {
        self.check(a)?;
        self.check(b)?;
        if !a.is_subset_of(b) {
            return Err(Error::NotSubset { sub: a, sup: b });
        }
        let gap: Vec<usize> = b.difference(a).indices().collect();
        if gap.len() > MAX_ENUMERATED_SPAN {
            return Err(Error::ChainSpanExceeded {
                span: gap.len(),
                max: MAX_ENUMERATED_SPAN,
            });
        }
        let mut out = Vec::new();
        let mut order = Vec::with_capacity(gap.len());
        permute(&gap, SubsetMask::EMPTY, &mut order, &mut |steps| {
            out.push(ChainPath::from_steps(a, steps).expect("gap indices are disjoint from a"));
        });
        Ok(out)
    }

    /// Principal filter `{σ : node ⊆ σ}`, ascending.
    pub fn up_set(&self, node: SubsetMask) -> Result<Vec<SubsetMask>> {
        self.check(node)?;
        let free = self.full().difference(node);
        Ok(free.submasks().map(|s| s.union(node)).collect())
    }

    /// Principal ideal `{σ : σ ⊆ node}`, ascending.
    pub fn down_set(&self, node: SubsetMask) -> Result<Vec<SubsetMask>> {
        self.submasks(node)
    }

    /// The order isomorphism between the filter above `cond` and the power
    /// set of the remaining variables.
    pub fn condition_projection(&self, cond: SubsetMask) -> Result<ConditionProjection> {
        self.check(cond)?;
        if cond.is_empty() {
            return Err(Error::EmptyConditioningSet);
        }
        let remaining: Vec<usize> = self.full().difference(cond).indices().collect();
        let labels = remaining.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(ConditionProjection {
            source_dim: self.dim(),
            cond,
            remaining,
            target: PowerSetLattice { labels },
        })
    }
}

fn permute(gap: &[usize], used: SubsetMask, order: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if order.len() == gap.len() {
        emit(order);
        return;
    }
    for &x in gap {
        if !used.contains(x) {
            order.push(x);
            permute(gap, used.with(x), order, emit);
            order.pop();
        }
    }
}

/// Maps the principal filter above a conditioning set onto a smaller
/// power-set lattice by deleting the conditioning variables and
/// renumbering the rest in ascending order.
#[derive(Debug, Clone)]
pub struct ConditionProjection {
    source_dim: usize,
    cond: SubsetMask,
    remaining: Vec<usize>,
    target: PowerSetLattice,
}

impl ConditionProjection {
    pub fn conditioning_set(&self) -> SubsetMask {
        self.cond
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    /// The lower-dimensional lattice, labelled with the remaining variables.
    pub fn target(&self) -> &PowerSetLattice {
        &self.target
    }

    /// Source index of each target variable.
    pub fn remaining(&self) -> &[usize] {
        &self.remaining
    }

    /// `σ ↦ σ \ cond`, renumbered; `None` when `σ` is outside the filter.
    pub fn forward(&self, sigma: SubsetMask) -> Option<SubsetMask> {
        if !self.cond.is_subset_of(sigma) || !sigma.is_subset_of(SubsetMask::full(self.source_dim)) {
            return None;
        }
        Some(SubsetMask::from_indices(
            self.remaining
                .iter()
                .enumerate()
                .filter(|(_, &src)| sigma.contains(src))
                .map(|(k, _)| k),
        ))
    }

    /// Inverse map; `None` when `tau` is not a node of the target lattice.
    pub fn inverse(&self, tau: SubsetMask) -> Option<SubsetMask> {
        if !self.target.contains(tau) {
            return None;
        }
        Some(
            tau.indices()
                .fold(self.cond, |m, k| m.with(self.remaining[k])),
        )
    }

    /// `(source node, target node)` pairs over the whole filter, ascending
    /// by target encoding.
    pub fn pairs(&self) -> Vec<(SubsetMask, SubsetMask)> {
        self.target
            .nodes()
            .map(|t| (self.inverse(t).unwrap(), t))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ix: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(ix.iter().copied())
    }

    #[test]
    fn submasks_small_cases() {
        assert_eq!(SubsetMask::EMPTY.submasks().collect::<Vec<_>>(), vec![SubsetMask::EMPTY]);
        assert_eq!(m(&[0]).submasks().collect::<Vec<_>>(), vec![m(&[]), m(&[0])]);
        let subs: Vec<_> = m(&[0, 1, 2]).submasks().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs, (0..8).map(SubsetMask::from_bits).collect::<Vec<_>>());
    }

    #[test]
    fn submasks_of_sparse_mask_are_ascending() {
        let subs: Vec<u32> = m(&[1, 4]).submasks().map(|s| s.bits()).collect();
        assert_eq!(subs, vec![0, 2, 16, 18]);
    }

    #[test]
    fn submasks_exhaustive_up_to_ten() {
        for bits in 0u32..(1 << 10) {
            let nu = SubsetMask::from_bits(bits);
            let subs: Vec<_> = nu.submasks().collect();
            assert_eq!(subs.len(), 1 << nu.len());
            assert!(subs.windows(2).all(|w| w[0] < w[1]));
            assert!(subs.iter().all(|s| s.is_subset_of(nu)));
        }
    }

    #[test]
    fn signs() {
        assert_eq!(sign_plus(m(&[0])), 1);
        assert_eq!(sign_plus(m(&[0, 1])), -1);
        assert_eq!(sign_plus(SubsetMask::EMPTY), -1);
        assert_eq!(mobius(m(&[]), m(&[])), Ok(1));
        assert_eq!(mobius(m(&[0]), m(&[0, 1])), Ok(-1));
        assert_eq!(mobius(m(&[0, 1]), m(&[0, 1, 2])), Ok(-1));
        assert!(mobius(m(&[2]), m(&[0, 1])).is_err());
    }

    #[test]
    fn mobius_factors_into_sign_plus() {
        for nu in 0u32..64 {
            let nu = SubsetMask::from_bits(nu);
            for tau in nu.submasks() {
                assert_eq!(mobius(tau, nu).unwrap(), sign_plus(tau) * sign_plus(nu));
            }
        }
    }

    #[test]
    fn covering_edge_counts() {
        let l1 = PowerSetLattice::new(1).unwrap();
        assert_eq!(
            l1.covering_edges(),
            vec![CoveringEdge {
                lower: SubsetMask::EMPTY,
                upper: m(&[0]),
                added: 0
            }]
        );
        // enumeration oracle: count pairs (τ, σ) with σ covering τ
        for n in 0..=6usize {
            let l = PowerSetLattice::new(n).unwrap();
            let brute = l
                .nodes()
                .flat_map(|a| l.nodes().map(move |b| (a, b)))
                .filter(|(a, b)| a.is_subset_of(*b) && b.len() == a.len() + 1)
                .count();
            assert_eq!(l.covering_edges().len(), brute);
            assert_eq!(brute, n * (1usize << n) / 2);
        }
        assert_eq!(PowerSetLattice::new(3).unwrap().covering_edges().len(), 12);
        assert_eq!(PowerSetLattice::new(5).unwrap().covering_edges().len(), 80);
    }

    #[test]
    fn chains() {
        let l = PowerSetLattice::new(5).unwrap();
        let same = l.enumerate_chains(m(&[1]), m(&[1])).unwrap();
        assert_eq!(same.len(), 1);
        assert_eq!(same[0].len(), 0);
        assert_eq!(l.enumerate_chains(m(&[]), m(&[0, 1])).unwrap().len(), 2);
        let all = l.enumerate_chains(SubsetMask::EMPTY, l.full()).unwrap();
        assert_eq!(all.len(), 120);
        assert_eq!(all[0].added_indices(), vec![0, 1, 2, 3, 4]);
        assert_eq!(all[119].added_indices(), vec![4, 3, 2, 1, 0]);
        assert!(l.enumerate_chains(m(&[0]), m(&[1, 2])).is_err());
    }

    #[test]
    fn chain_counts_are_factorial() {
        let l = PowerSetLattice::new(7).unwrap();
        let mut fact = 1;
        for k in 0..=6 {
            if k > 0 {
                fact *= k;
            }
            let b = SubsetMask::full(k).with(6);
            let chains = l.enumerate_chains(m(&[6]), b).unwrap();
            assert_eq!(chains.len(), fact);
        }
    }

    #[test]
    fn chain_validation_and_direction() {
        assert!(ChainPath::new(vec![m(&[]), m(&[0, 1])]).is_err());
        assert!(ChainPath::new(vec![m(&[0]), m(&[1])]).is_err());
        let c = ChainPath::from_steps(m(&[]), &[2, 0]).unwrap();
        assert_eq!(c.nodes(), &[m(&[]), m(&[2]), m(&[0, 2])]);
        let r = c.reversed();
        assert_eq!(r.direction(), Direction::Descending);
        assert_eq!(r.start(), m(&[0, 2]));
        assert_eq!(r.end(), m(&[]));
    }

    #[test]
    fn filters_and_ideals() {
        let l = PowerSetLattice::new(4).unwrap();
        let up = l.up_set(m(&[3])).unwrap();
        let down = l.down_set(m(&[0, 1, 2])).unwrap();
        assert_eq!(up.len(), 8);
        assert_eq!(down.len(), 8);
        let mut all: Vec<_> = up.iter().chain(down.iter()).copied().collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 16);
        assert_eq!(l.up_set(SubsetMask::EMPTY).unwrap().len(), 16);
        assert_eq!(l.down_set(SubsetMask::EMPTY).unwrap(), vec![SubsetMask::EMPTY]);
    }

    #[test]
    fn prime_filter_ideal_partition() {
        for n in 1..=6 {
            let l = PowerSetLattice::new(n).unwrap();
            for x in 0..n {
                let up = l.up_set(m(&[x])).unwrap();
                let down = l.down_set(l.full().without(x)).unwrap();
                assert!(up.iter().all(|s| !down.contains(s)));
                assert_eq!(up.len() + down.len(), l.node_count());
            }
        }
    }

    #[test]
    fn projection_on_four_variables() {
        let l = PowerSetLattice::new(4).unwrap();
        let p = l.condition_projection(m(&[3])).unwrap();
        assert_eq!(p.target().dim(), 3);
        assert_eq!(p.forward(m(&[3])), Some(m(&[])));
        assert_eq!(p.forward(m(&[0, 3])), Some(m(&[0])));
        assert_eq!(p.forward(m(&[0, 1, 2, 3])), Some(m(&[0, 1, 2])));
        assert_eq!(p.forward(m(&[0, 1])), None);
        assert_eq!(p.target().labels(), &["X1", "X2", "X3"]);
    }

    #[test]
    fn projection_on_five_variables() {
        let l = PowerSetLattice::new(5).unwrap();
        let p = l.condition_projection(m(&[3, 4])).unwrap();
        let pairs = p.pairs();
        assert_eq!(pairs.len(), 8);
        assert_eq!(p.target().dim(), 3);
        assert!(pairs.iter().all(|(s, _)| m(&[3, 4]).is_subset_of(*s)));

        let full = l.condition_projection(l.full()).unwrap();
        assert_eq!(full.pairs(), vec![(l.full(), SubsetMask::EMPTY)]);
        assert_eq!(l.condition_projection(SubsetMask::EMPTY).unwrap_err(), Error::EmptyConditioningSet);
    }

    #[test]
    fn projection_preserves_covering_both_ways() {
        let l = PowerSetLattice::new(6).unwrap();
        for cond in l.nodes().filter(|c| !c.is_empty()) {
            let p = l.condition_projection(cond).unwrap();
            let filter = l.up_set(cond).unwrap();
            for &a in &filter {
                let ta = p.forward(a).unwrap();
                assert_eq!(p.inverse(ta), Some(a));
                for &b in &filter {
                    let tb = p.forward(b).unwrap();
                    let covers = a.is_subset_of(b) && b.len() == a.len() + 1;
                    let covers_t = ta.is_subset_of(tb) && tb.len() == ta.len() + 1;
                    assert_eq!(covers, covers_t);
                }
            }
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        assert!(PowerSetLattice::new(20).is_ok());
        assert_eq!(
            PowerSetLattice::new(21).unwrap_err(),
            Error::DimensionExceeded { n: 21, cap: 20 }
        );
        let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        assert!(PowerSetLattice::with_labels_capped(labels, 2).is_err());
    }

    #[test]
    fn format_masks() {
        let l = PowerSetLattice::new(3).unwrap();
        assert_eq!(l.format_mask(SubsetMask::EMPTY), "∅");
        assert_eq!(l.format_mask(m(&[0, 2])), "{X1,X3}");
        assert_eq!(m(&[0, 2]).to_string(), "{0,2}");
    }
}
