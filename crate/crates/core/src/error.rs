// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors reported by every operation of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected {expected} variables, found {found}")]
    VarCountMismatch { expected: usize, found: usize },

    #[error("variable x{var} is out of range for a function of {n} variables")]
    VariableOutOfRange { var: usize, n: usize },

    #[error("variable x{0} is bound twice")]
    DuplicateBinding(usize),

    #[error("{0} variables requested, supported range is 1..={max}", max = crate::MAX_VARS)]
    UnsupportedVarCount(usize),

    #[error(
        "bound-set candidate of size {size} is not a proper subset of size >= 2 of {n} variables"
    )]
    InvalidBoundSet { size: usize, n: usize },

    #[error("primality is defined only for functions of at least 3 variables, got {0}")]
    PrimalityUndefined(usize),

    #[error("variable x{0} is irrelevant")]
    IrrelevantVariable(usize),

    #[error("parse error at byte {position} near `{token}`: {message}")]
    Parse {
        token: String,
        position: usize,
        message: String,
    },

    #[error("variable x{0} occurs more than once")]
    ReadOnceViolation(usize),

    #[error("label {0} is not a prime function")]
    NotPrimeLabel(String),

    #[error("prime label of arity {arity} exceeds the basis bound l = {l}")]
    BasisViolation { arity: usize, l: usize },

    #[error("variable x{0} does not occur in the tree")]
    MissingVariable(usize),

    #[error("empty variable set")]
    EmptyVarSet,

    #[error("not a relevance hypercube: {0}")]
    InvalidHypercube(String),

    #[error("target dimension {q} outside {dim}..={n}")]
    InvalidDimension { q: usize, dim: usize, n: usize },

    #[error("hypercube expansion failed at dimension {0}")]
    ExpansionFailed(usize),

    #[error("invalid dimension l = {l} for {n} variables")]
    InvalidArity { l: usize, n: usize },

    #[error("exhaustive enumeration refused for n = {n}, l = {l} (limit: n <= {limit})")]
    CostGuard { n: usize, l: usize, limit: usize },

    #[error("test vector {input} is labelled {label} but the target evaluates to {expected}")]
    InconsistentLabel {
        input: String,
        label: bool,
        expected: bool,
    },

    #[error("test vector {0} appears with both labels")]
    ConflictingLabels(String),

    #[error("target function is not a member of the alternative catalog")]
    TargetNotInCatalog,

    #[error("{count} catalog members are consistent with the test (expected exactly one)")]
    UniquenessViolation { count: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
