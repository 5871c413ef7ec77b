//! Multivariate information measures on power-set lattices.
//!
//! The crate computes joint entropy `H`, interaction information `I`,
//! multi-information `M` and the differential interaction information `Δ`
//! over every subset of a set of discrete variables, and checks the
//! Möbius-inversion dualities, conditioning identities and chain sum rules
//! that tie them together.
//!
//! ```
//! use infolattice::{JointDistribution, MeasureTable, SubsetMask, VariableSpec};
//!
//! let specs = (1..=3).map(|i| VariableSpec::new(format!("X{i}"), 2)).collect();
//! let xor = (0..4).map(|k| (vec![k & 1, k >> 1, (k & 1) ^ (k >> 1)], 0.25)).collect();
//! let d = JointDistribution::new(specs, xor).unwrap();
//! let table = MeasureTable::from_distribution(&d).unwrap();
//! let i = table.interaction().get(SubsetMask::full(3));
//! assert!((i + 1.0).abs() < 1e-12);
//! ```

pub mod distributions;
pub mod error;
pub mod lattice;
pub mod measures;
pub mod random;
pub mod sumrules;
pub mod transforms;
pub mod verify;

pub use distributions::{JointDistribution, LogBase, VariableSpec, Violation};
pub use error::{Error, Result};
pub use lattice::{ChainPath, CoveringEdge, Direction, PowerSetLattice, SubsetMask};
pub use measures::{DeltaValue, MeasureTable};
pub use transforms::{LatticeFunction, Role, SignConvention};

/// Tolerance for identities that hold exactly up to floating-point
/// rounding of the transforms.
pub const EXACT_TOLERANCE: f64 = 1e-12;

/// Tolerance for identities between quantities derived from a distribution.
pub const DISTRIBUTIONAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub exact: f64,
    pub distributional: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            exact: EXACT_TOLERANCE,
            distributional: DISTRIBUTIONAL_TOLERANCE,
        }
    }
}
