use thiserror::Error;

use crate::distributions::Violation;
use crate::lattice::SubsetMask;
use crate::transforms::Role;

/// Errors raised by lattice, transform, distribution and measure operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lattice dimension {n} exceeds the configured cap of {cap}")]
    DimensionExceeded { n: usize, cap: usize },

    #[error("subset {mask} is not a node of a {dim}-variable lattice")]
    MaskOutOfRange { mask: SubsetMask, dim: usize },

    #[error("{sub} is not a subset of {sup}")]
    NotSubset { sub: SubsetMask, sup: SubsetMask },

    #[error("{a} and {b} must be comparable with {a} strictly below {b}")]
    Incomparable { a: SubsetMask, b: SubsetMask },

    #[error("conditioning set must be nonempty")]
    EmptyConditioningSet,

    #[error("chain spans {span} steps; at most {max} can be enumerated")]
    ChainSpanExceeded { span: usize, max: usize },

    #[error("malformed chain: {0}")]
    MalformedChain(String),

    #[error("chain must start at a singleton, found {0}")]
    ChainStart(SubsetMask),

    #[error("dimension {n} outside supported range {min}..={max}")]
    DimensionRange { n: usize, min: usize, max: usize },

    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("value at {mask} is not finite")]
    NonFinite { mask: SubsetMask },

    #[error("lattice functions are defined over different lattices")]
    LatticeMismatch,

    #[error("expected a {expected:?} function, found {found:?}")]
    WrongRole { expected: Role, found: Role },

    #[error("value at the empty set must be 0, found {0}")]
    NonzeroEmptyValue(f64),

    #[error("{what} requires at least {needed} variables, found {found}")]
    TooFewVariables {
        what: &'static str,
        needed: usize,
        found: usize,
    },

    #[error("variable {index} is already in {base}")]
    IndexInSet { index: usize, base: SubsetMask },

    #[error("variable index {index} out of range for {dim} variables")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("{a} and {b} overlap")]
    Overlap { a: SubsetMask, b: SubsetMask },

    #[error("evaluation routes disagree by {spread:e}")]
    RoutesDisagree { spread: f64 },

    #[error("invalid distribution: {0}")]
    Distribution(#[from] Violation),

    #[error("no sample rows")]
    NoSamples,

    #[error("sample row {row}: expected {expected} values, found {found}")]
    SampleArity {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("sample row {row}: value {value} of {variable} is outside cardinality {cardinality}")]
    SampleOutOfRange {
        row: usize,
        variable: String,
        value: usize,
        cardinality: usize,
    },

    #[error("marginal over the empty set")]
    EmptyMarginal,

    #[error("invalid conditioning assignment: {0}")]
    InvalidAssignment(String),

    #[error("conditioning event has zero probability")]
    ZeroProbabilityCondition,
}

pub type Result<T> = std::result::Result<T, Error>;
