// SPDX-License-Identifier: Apache-2.0

//! Checking tests for read-once Boolean functions over the basis `B_l` of all
//! `l`-ary functions.
//!
//! The crate builds relevance tables and relevance hypercube sets (the
//! candidate checking tests), factors truth tables into canonical read-once
//! trees, and verifies at small scale, by exhaustive enumeration of
//! read-once alternatives, that generated tests separate the target from
//! every other read-once function.
//!
//! Modules:
//! - [`truth_table`] and [`vars`]: tables, projections, relevance, bound sets,
//!   primality and similarity.
//! - [`tree`]: canonical read-once trees, their text form and a seeded generator.
//! - [`hypercube`]: relevance hypercubes, expansion and stability.
//! - [`testgen`]: relevance tables and hypercube sets.
//! - [`factor`]: recognition and reconstruction of read-once trees.
//! - [`verify`]: alternative catalogs, checking-test verification and the
//!   seeded property suites.
//! - [`par`]: data-parallel helpers (rayon behind the `parallel` feature).

pub mod error;
pub mod factor;
pub mod hypercube;
pub mod par;
pub mod testgen;
pub mod tree;
pub mod truth_table;
pub mod vars;
pub mod verify;

/// Largest supported variable count.
pub const MAX_VARS: usize = 20;

pub use error::{Error, Result};
pub use factor::{factor, trees_equivalent};
pub use hypercube::Hypercube;
pub use testgen::{LabeledVector, RelevanceTable, TestSet};
pub use tree::{Formula, Gate, NodeId, ReadOnceTree};
pub use truth_table::{SimilarityWitness, TruthTable};
pub use vars::{PartialAssignment, VarSet};
pub use verify::AlternativeCatalog;
