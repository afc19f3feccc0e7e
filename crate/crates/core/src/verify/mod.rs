// SPDX-License-Identifier: Apache-2.0

//! Exhaustive verification of checking tests against catalogs of read-once
//! alternatives.
//!
//! A test set is a checking test for `f` when every other catalog member
//! disagrees with one of its labelled vectors. Alternatives range over the
//! same `n` variables and may ignore some of them.

mod catalog;
pub mod props;

pub use catalog::{catalog_limit, enumerate_readonce, prime_functions, AlternativeCatalog};

use crate::error::{Error, Result};
use crate::par;
use crate::testgen::{LabeledVector, TestSet};
use crate::truth_table::TruthTable;

/// Outcome of [`is_checking_test`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Checking,
    /// The smallest (in `tt:` order) alternative agreeing with the test.
    Counterexample(TruthTable),
}

impl Verdict {
    pub fn is_checking(&self) -> bool {
        matches!(self, Verdict::Checking)
    }
}

/// Whether `g` matches every labelled vector, given the test as a pair of
/// (covered rows, labels) tables.
fn agrees(g: &TruthTable, points: &TruthTable, labels: &TruthTable) -> bool {
    g.words()
        .iter()
        .zip(labels.words())
        .zip(points.words())
        .all(|((g, l), p)| (g ^ l) & p == 0)
}

fn check_target(f: &TruthTable, catalog: &AlternativeCatalog) -> Result<()> {
    if f.num_vars() != catalog.n {
        return Err(Error::VarCountMismatch {
            expected: catalog.n,
            found: f.num_vars(),
        });
    }
    if let Some(v) = f.first_irrelevant() {
        return Err(Error::IrrelevantVariable(v));
    }
    if !catalog.contains(f) {
        return Err(Error::TargetNotInCatalog);
    }
    Ok(())
}

/// Checks that `m` separates `f` from every other member of `catalog`.
pub fn is_checking_test(
    f: &TruthTable,
    m: &TestSet,
    catalog: &AlternativeCatalog,
) -> Result<Verdict> {
    check_target(f, catalog)?;
    m.check_consistent(f)?;
    let (points, labels) = m.masks();
    let tables = catalog.tables();
    Ok(
        match par::position_first(tables, |g| g != f && agrees(g, &points, &labels)) {
            Some(i) => Verdict::Counterexample(tables[i].clone()),
            None => Verdict::Checking,
        },
    )
}

/// Largest `n` accepted by [`min_test`].
pub const MIN_TEST_LIMIT: usize = 3;

/// A smallest checking test for `f`, by exhaustive search over subsets of the
/// `2^n` labelled vectors (smallest size first, then ascending subset mask).
pub fn min_test(f: &TruthTable, catalog: &AlternativeCatalog) -> Result<TestSet> {
    check_target(f, catalog)?;
    let n = f.num_vars();
    if n > MIN_TEST_LIMIT {
        return Err(Error::CostGuard {
            n,
            l: catalog.l,
            limit: MIN_TEST_LIMIT,
        });
    }
    let fb = f.as_u64().expect("n <= 3");
    let diffs: Vec<u64> = catalog
        .tables()
        .iter()
        .filter(|g| *g != f)
        .map(|g| g.as_u64().expect("n <= 3") ^ fb)
        .collect();
    let rows = 1usize << n;
    let mut masks: Vec<u64> = (0..1u64 << rows).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let best = masks
        .into_iter()
        .find(|&m| diffs.iter().all(|d| d & m != 0))
        .expect("the full cube separates all distinct functions");
    TestSet::new(
        n,
        (0..rows)
            .filter(|r| best >> r & 1 == 1)
            .map(|input| LabeledVector {
                input,
                label: f.get(input),
            }),
    )
}

/// Size of a smallest checking test for `f` (`n <= 3`).
pub fn min_test_size(f: &TruthTable, catalog: &AlternativeCatalog) -> Result<usize> {
    Ok(min_test(f, catalog)?.len())
}

/// The unique catalog member consistent with every vector of `m`.
pub fn identify_from_test(m: &TestSet, catalog: &AlternativeCatalog) -> Result<TruthTable> {
    if m.num_vars() != catalog.n {
        return Err(Error::VarCountMismatch {
            expected: catalog.n,
            found: m.num_vars(),
        });
    }
    let (points, labels) = m.masks();
    let tables = catalog.tables();
    let consistent: Vec<usize> = par::map_range(tables.len(), |i| {
        agrees(&tables[i], &points, &labels).then_some(i)
    })
    .into_iter()
    .flatten()
    .collect();
    match consistent.as_slice() {
        [i] => Ok(tables[*i].clone()),
        other => Err(Error::UniquenessViolation { count: other.len() }),
    }
}
