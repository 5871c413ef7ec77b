//! Random distributions and lattice functions for property checks and
//! benchmarks.

use std::sync::Arc;

use rand::Rng;

use crate::distributions::{JointDistribution, VariableSpec};
use crate::lattice::PowerSetLattice;
use crate::transforms::{LatticeFunction, Role};

/// A pmf drawn from the flat Dirichlet over the full tuple space of the
/// given cardinalities, with variables named `X1..Xn`.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, cardinalities: &[usize]) -> JointDistribution {
    let specs: Vec<VariableSpec> = cardinalities
        .iter()
        .enumerate()
        .map(|(i, &c)| VariableSpec::new(format!("X{}", i + 1), c))
        .collect();
    let mut tuples = vec![Vec::new()];
    for &c in cardinalities {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..c).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    let weights: Vec<f64> = tuples
        .iter()
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    let records = tuples
        .into_iter()
        .zip(weights)
        .map(|(t, w)| (t, w / total))
        .collect();
    JointDistribution::new(specs, records).expect("normalised random pmf is valid")
}

/// [`random_distribution`] over `n` binary variables.
pub fn random_binary_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> JointDistribution {
    random_distribution(rng, &vec![2; n])
}

/// Values drawn uniformly from `[-1, 1)` on every node.
pub fn random_lattice_function<R: Rng + ?Sized>(rng: &mut R, lattice: Arc<PowerSetLattice>, role: Role) -> LatticeFunction {
    LatticeFunction::from_fn(lattice, role, |_| rng.gen_range(-1.0..1.0)).expect("finite values")
}
