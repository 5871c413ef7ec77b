//! Discrete joint distributions over named categorical variables.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::lattice::{PowerSetLattice, SubsetMask, DEFAULT_MAX_DIM};
use crate::transforms::{LatticeFunction, Role};

/// Allowed deviation of the total mass from 1.
pub const MASS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    pub cardinality: usize,
}

impl VariableSpec {
    pub fn new(name: impl Into<String>, cardinality: usize) -> Self {
        VariableSpec {
            name: name.into(),
            cardinality,
        }
    }
}

/// Logarithm base for entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
}

impl LogBase {
    fn log(self, p: f64) -> f64 {
        match self {
            LogBase::Bits => p.log2(),
            LogBase::Nats => p.ln(),
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            LogBase::Bits => "bits",
            LogBase::Nats => "nats",
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.unit())
    }
}

/// The first constraint a candidate distribution violates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("distribution has no variables")]
    NoVariables,
    #[error("variable {name:?} has cardinality 0")]
    ZeroCardinality { name: String },
    #[error("variable name {name:?} appears more than once")]
    DuplicateName { name: String },
    #[error("record {record}: tuple has {found} values, expected {expected}")]
    Arity {
        record: usize,
        expected: usize,
        found: usize,
    },
    #[error("record {record}: value {value} of {variable:?} is outside cardinality {cardinality}")]
    ValueOutOfRange {
        record: usize,
        variable: String,
        value: usize,
        cardinality: usize,
    },
    #[error("record {record}: probability {p} is not finite")]
    NonFinite { record: usize, p: f64 },
    #[error("record {record}: negative probability {p}")]
    Negative { record: usize, p: f64 },
    #[error("record {record}: tuple {tuple:?} listed twice")]
    DuplicateTuple { record: usize, tuple: Vec<usize> },
    #[error("total mass {total} differs from 1 by more than {MASS_TOLERANCE:e}")]
    Mass { total: f64 },
}

/// Checks the variable list and `(tuple, probability)` records against
/// the constraints of a joint distribution.
pub fn validate(variables: &[VariableSpec], records: &[(Vec<usize>, f64)]) -> std::result::Result<(), Violation> {
    validate_variables(variables)?;
    let mut seen = HashSet::with_capacity(records.len());
    let mut total = 0.0;
    for (record, (tuple, p)) in records.iter().enumerate() {
        check_tuple(variables, tuple, record)?;
        if !p.is_finite() {
            return Err(Violation::NonFinite { record, p: *p });
        }
        if *p < 0.0 {
            return Err(Violation::Negative { record, p: *p });
        }
        if !seen.insert(tuple) {
            return Err(Violation::DuplicateTuple {
                record,
                tuple: tuple.clone(),
            });
        }
        total += p;
    }
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Violation::Mass { total });
    }
    Ok(())
}

fn validate_variables(variables: &[VariableSpec]) -> std::result::Result<(), Violation> {
    if variables.is_empty() {
        return Err(Violation::NoVariables);
    }
    let mut names = HashSet::new();
    for v in variables {
        if v.cardinality == 0 {
            return Err(Violation::ZeroCardinality {
                name: v.name.clone(),
            });
        }
        if !names.insert(v.name.as_str()) {
            return Err(Violation::DuplicateName {
                name: v.name.clone(),
            });
        }
    }
    Ok(())
}

fn check_tuple(variables: &[VariableSpec], tuple: &[usize], record: usize) -> std::result::Result<(), Violation> {
    if tuple.len() != variables.len() {
        return Err(Violation::Arity {
            record,
            expected: variables.len(),
            found: tuple.len(),
        });
    }
    for (v, &value) in variables.iter().zip(tuple) {
        if value >= v.cardinality {
            return Err(Violation::ValueOutOfRange {
                record,
                variable: v.name.clone(),
                value,
                cardinality: v.cardinality,
            });
        }
    }
    Ok(())
}

/// A validated joint pmf. Only tuples with positive mass are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    variables: Vec<VariableSpec>,
    pmf: BTreeMap<Vec<usize>, f64>,
}

impl JointDistribution {
    pub fn new(variables: Vec<VariableSpec>, records: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        validate(&variables, &records)?;
        let pmf = records.into_iter().filter(|(_, p)| *p > 0.0).collect();
        Ok(JointDistribution { variables, pmf })
    }

    /// Independent product of the given marginals.
    pub fn product(variables: Vec<VariableSpec>, marginals: &[Vec<f64>]) -> Result<Self> {
        if marginals.len() != variables.len() {
            return Err(Error::LengthMismatch {
                expected: variables.len(),
                found: marginals.len(),
            });
        }
        let mut records = vec![(Vec::new(), 1.0)];
        for m in marginals {
            records = records
                .into_iter()
                .flat_map(|(t, p)| {
                    m.iter().enumerate().map(move |(v, q)| {
                        let mut t = t.clone();
                        t.push(v);
                        (t, p * q)
                    })
                })
                .collect();
        }
        Self::new(variables, records)
    }

    /// Maximum-likelihood estimate `count(t) / N`.
    pub fn from_samples(rows: &[Vec<usize>], specs: Vec<VariableSpec>) -> Result<Self> {
        validate_variables(&specs)?;
        if rows.is_empty() {
            return Err(Error::NoSamples);
        }
        let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for (row, tuple) in rows.iter().enumerate() {
            if tuple.len() != specs.len() {
                return Err(Error::SampleArity {
                    row,
                    expected: specs.len(),
                    found: tuple.len(),
                });
            }
            for (v, &value) in specs.iter().zip(tuple) {
                if value >= v.cardinality {
                    return Err(Error::SampleOutOfRange {
                        row,
                        variable: v.name.clone(),
                        value,
                        cardinality: v.cardinality,
                    });
                }
            }
            *counts.entry(tuple.clone()).or_default() += 1;
        }
        let n = rows.len() as f64;
        let pmf = counts.into_iter().map(|(t, c)| (t, c as f64 / n)).collect();
        Ok(JointDistribution {
            variables: specs,
            pmf,
        })
    }

    pub fn variables(&self) -> &[VariableSpec] {
        &self.variables
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    /// Positive-mass tuples in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.pmf.iter().map(|(t, &p)| (t.as_slice(), p))
    }

    pub fn support_size(&self) -> usize {
        self.pmf.len()
    }

    pub fn prob(&self, tuple: &[usize]) -> f64 {
        self.pmf.get(tuple).copied().unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.pmf.values().sum()
    }

    /// Re-checks every invariant.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let records: Vec<_> = self.pmf.iter().map(|(t, &p)| (t.clone(), p)).collect();
        validate(&self.variables, &records)
    }

    pub fn labels(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.name.clone()).collect()
    }

    fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        if mask.is_subset_of(SubsetMask::full(self.dim())) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                mask,
                dim: self.dim(),
            })
        }
    }

    /// Sums out every variable outside `keep`; variables stay in index order.
    pub fn marginal(&self, keep: SubsetMask) -> Result<JointDistribution> {
        self.check_mask(keep)?;
        if keep.is_empty() {
            return Err(Error::EmptyMarginal);
        }
        let idx: Vec<usize> = keep.indices().collect();
        let mut pmf: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (t, &p) in &self.pmf {
            *pmf.entry(idx.iter().map(|&i| t[i]).collect()).or_default() += p;
        }
        Ok(JointDistribution {
            variables: idx.iter().map(|&i| self.variables[i].clone()).collect(),
            pmf,
        })
    }

    /// Conditional distribution of the unassigned variables given
    /// `(variable index, value)` assignments.
    pub fn slice_condition(&self, assignments: &[(usize, usize)]) -> Result<JointDistribution> {
        let mut fixed = SubsetMask::EMPTY;
        for &(i, value) in assignments {
            if i >= self.dim() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: self.dim(),
                });
            }
            if fixed.contains(i) {
                return Err(Error::InvalidAssignment(format!(
                    "{} assigned twice",
                    self.variables[i].name
                )));
            }
            if value >= self.variables[i].cardinality {
                return Err(Error::InvalidAssignment(format!(
                    "value {value} outside cardinality of {}",
                    self.variables[i].name
                )));
            }
            fixed = fixed.with(i);
        }
        let free = SubsetMask::full(self.dim()).difference(fixed);
        if free.is_empty() {
            return Err(Error::InvalidAssignment(
                "every variable is assigned; nothing left to condition".into(),
            ));
        }
        let idx: Vec<usize> = free.indices().collect();
        let mut pmf: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        let mut mass = 0.0;
        for (t, &p) in &self.pmf {
            if assignments.iter().all(|&(i, v)| t[i] == v) {
                *pmf.entry(idx.iter().map(|&i| t[i]).collect()).or_default() += p;
                mass += p;
            }
        }
        if mass <= 0.0 {
            return Err(Error::ZeroProbabilityCondition);
        }
        for p in pmf.values_mut() {
            *p /= mass;
        }
        Ok(JointDistribution {
            variables: idx.iter().map(|&i| self.variables[i].clone()).collect(),
            pmf,
        })
    }

    /// `-Σ p log p` over the support, in bits.
    pub fn entropy(&self) -> f64 {
        self.entropy_in(LogBase::Bits)
    }

    pub fn entropy_in(&self, base: LogBase) -> f64 {
        entropy_of(self.pmf.values().copied(), base)
    }

    /// Entropy of the marginal over `keep` without materialising it. The
    /// empty set has entropy 0.
    pub fn subset_entropy(&self, keep: SubsetMask, base: LogBase) -> f64 {
        if keep.is_empty() {
            return 0.0;
        }
        let idx: Vec<usize> = keep.indices().collect();
        let mut masses: HashMap<Vec<usize>, f64> = HashMap::new();
        for (t, &p) in &self.pmf {
            *masses.entry(idx.iter().map(|&i| t[i]).collect()).or_default() += p;
        }
        // sort so the floating-point sum is independent of hash order
        let mut ps: Vec<(Vec<usize>, f64)> = masses.into_iter().collect();
        ps.sort_by(|a, b| a.0.cmp(&b.0));
        entropy_of(ps.into_iter().map(|(_, p)| p), base)
    }

    /// `H(τ)` on every node, in bits, under the default dimension cap.
    pub fn entropy_lattice(&self) -> Result<LatticeFunction> {
        self.entropy_lattice_with(LogBase::Bits, DEFAULT_MAX_DIM)
    }

    pub fn entropy_lattice_with(&self, base: LogBase, max_dim: usize) -> Result<LatticeFunction> {
        let lattice = Arc::new(PowerSetLattice::with_labels_capped(self.labels(), max_dim)?);
        let values: Vec<f64> = (0..lattice.node_count() as u32)
            .into_par_iter()
            .map(|bits| self.subset_entropy(SubsetMask::from_bits(bits), base))
            .collect();
        LatticeFunction::new(lattice, values, Role::Entropy)
    }
}

/// Shannon entropy of a mass vector; zero masses contribute nothing.
pub fn entropy_of(probs: impl IntoIterator<Item = f64>, base: LogBase) -> f64 {
    let h: f64 = probs
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * base.log(p))
        .sum();
    h.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize) -> Vec<VariableSpec> {
        (1..=n).map(|i| VariableSpec::new(format!("X{i}"), 2)).collect()
    }

    fn xor() -> JointDistribution {
        let rows: Vec<Vec<usize>> = (0..4).map(|k| vec![k & 1, k >> 1, (k & 1) ^ (k >> 1)]).collect();
        JointDistribution::from_samples(&rows, bits(3)).unwrap()
    }

    #[test]
    fn validate_examples() {
        let coin = bits(1);
        assert!(validate(&coin, &[(vec![0], 0.5), (vec![1], 0.5)]).is_ok());
        assert!(matches!(
            validate(&coin, &[(vec![0], 0.5), (vec![1], 0.4)]),
            Err(Violation::Mass { .. })
        ));
        assert!(matches!(
            validate(&coin, &[(vec![0], 1.5), (vec![1], -0.5)]),
            Err(Violation::Negative { record: 1, .. })
        ));
        assert!(matches!(
            validate(&coin, &[(vec![0, 1], 1.0)]),
            Err(Violation::Arity { .. })
        ));
        assert!(matches!(
            validate(&coin, &[(vec![2], 1.0)]),
            Err(Violation::ValueOutOfRange { .. })
        ));
        assert!(matches!(
            validate(&coin, &[(vec![0], 0.5), (vec![0], 0.5)]),
            Err(Violation::DuplicateTuple { .. })
        ));
        let dup = vec![VariableSpec::new("A", 2), VariableSpec::new("A", 2)];
        assert!(matches!(validate(&dup, &[]), Err(Violation::DuplicateName { .. })));
        assert!(matches!(validate(&[], &[]), Err(Violation::NoVariables)));
    }

    #[test]
    fn from_samples_examples() {
        let d = xor();
        assert_eq!(d.support_size(), 4);
        assert!(d.support().all(|(_, p)| p == 0.25));
        assert_eq!(d.prob(&[1, 1, 0]), 0.25);
        assert_eq!(d.prob(&[1, 1, 1]), 0.0);

        let point = JointDistribution::from_samples(&vec![vec![1, 0]; 7], bits(2)).unwrap();
        assert_eq!(point.support_size(), 1);
        assert_eq!(point.prob(&[1, 0]), 1.0);

        let coin = JointDistribution::from_samples(&[vec![0], vec![1]], bits(1)).unwrap();
        assert_eq!(coin.entropy(), 1.0);

        assert_eq!(JointDistribution::from_samples(&[], bits(1)).unwrap_err(), Error::NoSamples);
        assert!(matches!(
            JointDistribution::from_samples(&[vec![3]], bits(1)),
            Err(Error::SampleOutOfRange { row: 0, value: 3, .. })
        ));
    }

    #[test]
    fn balanced_enumeration_reproduces_pmf() {
        let specs = vec![VariableSpec::new("A", 2), VariableSpec::new("B", 3)];
        let rows: Vec<Vec<usize>> = (0..2).flat_map(|a| (0..3).map(move |b| vec![a, b])).collect();
        let d = JointDistribution::from_samples(&rows, specs.clone()).unwrap();
        let exact = JointDistribution::product(specs, &[vec![0.5; 2], vec![1.0 / 3.0; 3]]).unwrap();
        for (t, p) in exact.support() {
            assert!((d.prob(t) - p).abs() < 1e-15);
        }
    }

    #[test]
    fn marginal_examples() {
        let d = xor();
        assert_eq!(d.marginal(SubsetMask::full(3)).unwrap(), d);
        let m = d.marginal(SubsetMask::from_bits(0b011)).unwrap();
        assert_eq!(m.support_size(), 4);
        assert!(m.support().all(|(_, p)| p == 0.25));
        assert_eq!(d.marginal(SubsetMask::EMPTY).unwrap_err(), Error::EmptyMarginal);

        let specs = bits(3);
        let prod = JointDistribution::product(specs, &[vec![0.2, 0.8], vec![0.6, 0.4], vec![0.3, 0.7]]).unwrap();
        let m = prod.marginal(SubsetMask::from_bits(0b101)).unwrap();
        assert_eq!(m.labels(), vec!["X1", "X3"]);
        assert!((m.prob(&[1, 0]) - 0.8 * 0.3).abs() < 1e-15);
        assert!((m.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn slice_condition_examples() {
        let d = xor();
        let s = d.slice_condition(&[(2, 0)]).unwrap();
        assert_eq!(s.labels(), vec!["X1", "X2"]);
        assert_eq!(s.prob(&[0, 0]), 0.5);
        assert_eq!(s.prob(&[1, 1]), 0.5);
        assert_eq!(s.support_size(), 2);

        let pair = JointDistribution::product(bits(2), &[vec![0.3, 0.7], vec![0.9, 0.1]]).unwrap();
        let given = pair.slice_condition(&[(0, 1)]).unwrap();
        assert!((given.prob(&[0]) - 0.9).abs() < 1e-12);
        assert!((given.prob(&[1]) - 0.1).abs() < 1e-12);

        let point = JointDistribution::new(bits(2), vec![(vec![1, 0], 1.0)]).unwrap();
        let p = point.slice_condition(&[(0, 1)]).unwrap();
        assert_eq!(p.prob(&[0]), 1.0);
        assert_eq!(point.slice_condition(&[(0, 0)]).unwrap_err(), Error::ZeroProbabilityCondition);
        assert!(point.slice_condition(&[(0, 1), (1, 0)]).is_err());
        assert!(point.slice_condition(&[(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy_of([0.5, 0.5], LogBase::Bits), 1.0);
        assert_eq!(entropy_of([0.25; 4], LogBase::Bits), 2.0);
        let direct = -(0.25f64 * 0.25f64.log2() + 0.75 * 0.75f64.log2());
        assert!((entropy_of([0.25, 0.75], LogBase::Bits) - 0.811_278_124_459_132_8).abs() < 1e-15);
        assert!((direct - 0.811_278_124_459_132_8).abs() < 1e-15);
        assert_eq!(entropy_of([1.0, 0.0], LogBase::Bits), 0.0);
        assert!((entropy_of([0.5, 0.5], LogBase::Nats) - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn entropy_lattice_examples() {
        let indep = JointDistribution::product(bits(3), &[vec![0.5; 2], vec![0.5; 2], vec![0.5; 2]]).unwrap();
        let h = indep.entropy_lattice().unwrap();
        for m in h.lattice().nodes() {
            assert!((h.get(m) - m.len() as f64).abs() < 1e-12);
        }

        let h = xor().entropy_lattice().unwrap();
        let expect = [0.0, 1.0, 1.0, 2.0, 1.0, 2.0, 2.0, 2.0];
        assert_eq!(h.values(), &expect);

        let point = JointDistribution::new(bits(3), vec![(vec![0, 1, 0], 1.0)]).unwrap();
        assert!(point.entropy_lattice().unwrap().values().iter().all(|&v| v == 0.0));

        let wide: Vec<VariableSpec> = (0..4).map(|i| VariableSpec::new(format!("V{i}"), 1)).collect();
        let d = JointDistribution::new(wide, vec![(vec![0; 4], 1.0)]).unwrap();
        assert!(matches!(
            d.entropy_lattice_with(LogBase::Bits, 3),
            Err(Error::DimensionExceeded { n: 4, cap: 3 })
        ));
    }

    #[test]
    fn cardinality_one_is_legal() {
        let specs = vec![VariableSpec::new("K", 1), VariableSpec::new("B", 2)];
        let d = JointDistribution::new(specs, vec![(vec![0, 0], 0.5), (vec![0, 1], 0.5)]).unwrap();
        let h = d.entropy_lattice().unwrap();
        assert_eq!(h.get(SubsetMask::from_bits(1)), 0.0);
        assert_eq!(h.get(SubsetMask::from_bits(3)), 1.0);
    }
}
