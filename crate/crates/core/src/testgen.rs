// SPDX-License-Identifier: Apache-2.0

//! Relevance tables and relevance hypercube sets.
//!
//! For a target depending on all of its `n` variables and a dimension `l`,
//! the relevance table has one row per `l`-subset `w` (lexicographic order)
//! holding a relevance hypercube for `w` together with the target's values on
//! it, or `*` when no such hypercube exists. The union of the non-`*` rows is
//! the hypercube set, the candidate checking test, of size at most
//! `2^l * C(n, l)`.
//!
//! File formats:
//! - relevance table: one line per row, `w=1,2<TAB>hc:{...} 001:1 ...` or
//!   `w=1,2<TAB>*`;
//! - test set: a header `n=<n>`, then one `bits label` line per vector with
//!   `x1` leftmost.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypercube::{find_hypercubes, find_one_hypercube, Hypercube};
use crate::par;
use crate::truth_table::TruthTable;
use crate::vars::VarSet;
use crate::MAX_VARS;

/// An input row together with the target's value there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledVector {
    /// Row index (`x_i` is bit `i-1`).
    pub input: usize,
    pub label: bool,
}

impl LabeledVector {
    /// The input as `0`/`1` characters, `x1` leftmost.
    pub fn bits(&self, n: usize) -> String {
        (0..n)
            .map(|i| if self.input >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn point(&self, n: usize) -> Vec<bool> {
        (0..n).map(|i| self.input >> i & 1 == 1).collect()
    }
}

fn parse_bits(token: &str, n: usize) -> Result<usize> {
    if token.len() != n || !token.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::Parse {
            token: token.to_string(),
            position: 0,
            message: format!("expected {n} characters 0/1"),
        });
    }
    Ok(token
        .bytes()
        .enumerate()
        .fold(0, |acc, (i, b)| acc | (usize::from(b == b'1') << i)))
}

/// A deduplicated set of labelled vectors, sorted by row index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestSet {
    n: usize,
    vectors: Vec<LabeledVector>,
}

impl TestSet {
    /// Deduplicates `vectors`; the same input with both labels is an error.
    pub fn new(n: usize, vectors: impl IntoIterator<Item = LabeledVector>) -> Result<TestSet> {
        if n > MAX_VARS {
            return Err(Error::UnsupportedVarCount(n));
        }
        let mut map = BTreeMap::new();
        for v in vectors {
            if v.input >= 1 << n {
                return Err(Error::VariableOutOfRange {
                    var: usize::BITS as usize - v.input.leading_zeros() as usize,
                    n,
                });
            }
            if let Some(&old) = map.get(&v.input) {
                if old != v.label {
                    return Err(Error::ConflictingLabels(v.bits(n)));
                }
            }
            map.insert(v.input, v.label);
        }
        Ok(TestSet {
            n,
            vectors: map
                .into_iter()
                .map(|(input, label)| LabeledVector { input, label })
                .collect(),
        })
    }

    /// Every row of `tt`.
    pub fn from_table(tt: &TruthTable) -> TestSet {
        TestSet {
            n: tt.num_vars(),
            vectors: (0..tt.len())
                .map(|input| LabeledVector {
                    input,
                    label: tt.get(input),
                })
                .collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[LabeledVector] {
        &self.vectors
    }

    /// Fails on the first vector whose label differs from `tt`.
    pub fn check_consistent(&self, tt: &TruthTable) -> Result<()> {
        if tt.num_vars() != self.n {
            return Err(Error::VarCountMismatch {
                expected: tt.num_vars(),
                found: self.n,
            });
        }
        match self.vectors.iter().find(|v| tt.get(v.input) != v.label) {
            Some(v) => Err(Error::InconsistentLabel {
                input: v.bits(self.n),
                label: v.label,
                expected: !v.label,
            }),
            None => Ok(()),
        }
    }

    /// Tables marking the rows covered by the test and their labels.
    pub fn masks(&self) -> (TruthTable, TruthTable) {
        let mut points = TruthTable::zero(self.n).expect("checked n");
        let mut labels = TruthTable::zero(self.n).expect("checked n");
        for v in &self.vectors {
            points.set(v.input, true);
            labels.set(v.input, v.label);
        }
        (points, labels)
    }

    /// Parses the test-set file format.
    pub fn parse(text: &str) -> Result<TestSet> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse {
            token: "<end of input>".into(),
            position: 0,
            message: "missing `n=<n>` header".into(),
        })?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse {
                token: header.to_string(),
                position: 0,
                message: "expected `n=<n>` header".into(),
            })?;
        if n > MAX_VARS {
            return Err(Error::UnsupportedVarCount(n));
        }
        let mut vectors = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let (bits, label) = match (parts.next(), parts.next(), parts.next()) {
                (Some(b), Some(l), None) => (b, l),
                _ => {
                    return Err(Error::Parse {
                        token: line.to_string(),
                        position: 0,
                        message: "expected `bits label`".into(),
                    })
                }
            };
            let input = parse_bits(bits, n)?;
            let label = match label {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::Parse {
                        token: other.to_string(),
                        position: 0,
                        message: "label must be 0 or 1".into(),
                    })
                }
            };
            vectors.push(LabeledVector { input, label });
        }
        TestSet::new(n, vectors)
    }
}

impl fmt::Display for TestSet {
    /// The test-set file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for v in &self.vectors {
            writeln!(f, "{} {}", v.bits(self.n), u8::from(v.label))?;
        }
        Ok(())
    }
}

/// A hypercube of a relevance-table row with the target's values on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEntry {
    pub cube: Hypercube,
    pub vectors: Vec<LabeledVector>,
}

impl CubeEntry {
    fn new(tt: &TruthTable, cube: Hypercube) -> CubeEntry {
        let vectors = cube
            .rows()
            .map(|input| LabeledVector {
                input,
                label: tt.get(input),
            })
            .collect();
        CubeEntry { cube, vectors }
    }
}

/// One `l`-subset and its hypercubes; no hypercube means a `*` row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevanceRow {
    pub w: VarSet,
    pub cubes: Vec<CubeEntry>,
}

impl RelevanceRow {
    pub fn is_star(&self) -> bool {
        self.cubes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevanceTable {
    pub n: usize,
    pub l: usize,
    pub rows: Vec<RelevanceRow>,
}

impl RelevanceTable {
    pub fn star_rows(&self) -> impl Iterator<Item = &RelevanceRow> {
        self.rows.iter().filter(|r| r.is_star())
    }

    /// All labelled vectors of all rows, in row order, duplicates kept.
    pub fn multiset(&self) -> Vec<LabeledVector> {
        self.rows
            .iter()
            .flat_map(|r| r.cubes.iter().flat_map(|c| c.vectors.iter().copied()))
            .collect()
    }

    /// The deduplicated union of all rows.
    pub fn test_set(&self) -> TestSet {
        TestSet::new(self.n, self.multiset()).expect("labels come from one function")
    }
}

impl fmt::Display for RelevanceTable {
    /// The relevance-table file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            write!(f, "w={}\t", row.w)?;
            if row.is_star() {
                f.write_str("*")?;
            }
            for (i, c) in row.cubes.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", c.cube)?;
                for v in &c.vectors {
                    write!(f, " {}:{}", v.bits(self.n), u8::from(v.label))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_target(tt: &TruthTable, l: usize) -> Result<()> {
    let n = tt.num_vars();
    if n == 0 {
        return Err(Error::UnsupportedVarCount(0));
    }
    if let Some(v) = tt.first_irrelevant() {
        return Err(Error::IrrelevantVariable(v));
    }
    if l == 0 || l > n {
        return Err(Error::InvalidArity { l, n });
    }
    Ok(())
}

/// All `l`-subsets of `1..n` in lexicographic order.
pub fn subsets_of_size(n: usize, l: usize) -> Vec<VarSet> {
    (1..=n)
        .combinations(l)
        .map(|c| c.into_iter().collect())
        .collect()
}

fn build_table(tt: &TruthTable, l: usize, all_cubes: bool) -> Result<RelevanceTable> {
    check_target(tt, l)?;
    let n = tt.num_vars();
    let subsets = subsets_of_size(n, l);
    let rows = par::map_slice(&subsets, |&w| -> Result<RelevanceRow> {
        let cubes = if all_cubes {
            find_hypercubes(tt, w)?
        } else {
            find_one_hypercube(tt, w)?.into_iter().collect()
        };
        Ok(RelevanceRow {
            w,
            cubes: cubes.into_iter().map(|c| CubeEntry::new(tt, c)).collect(),
        })
    });
    Ok(RelevanceTable {
        n,
        l,
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

/// Relevance table with the first hypercube (ascending fixing) of each subset.
pub fn relevance_table(tt: &TruthTable, l: usize) -> Result<RelevanceTable> {
    build_table(tt, l, false)
}

/// Relevance table listing every hypercube of each subset.
pub fn relevance_table_all(tt: &TruthTable, l: usize) -> Result<RelevanceTable> {
    build_table(tt, l, true)
}

/// The relevance hypercube set of dimension `l`, deduplicated.
pub fn hypercube_set(tt: &TruthTable, l: usize) -> Result<TestSet> {
    Ok(relevance_table(tt, l)?.test_set())
}

/// Union of every relevance hypercube of every `l`-subset.
pub fn hypercube_set_all(tt: &TruthTable, l: usize) -> Result<TestSet> {
    Ok(relevance_table_all(tt, l)?.test_set())
}

/// `2^l * C(n, l)`, the size bound of a hypercube set (0 when `l > n`).
pub fn size_bound(n: usize, l: usize) -> u64 {
    if l > n {
        return 0;
    }
    let k = l.min(n - l) as u64;
    let binom = (0..k).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1));
    binom << l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> TruthTable {
        "tt:3:e4".parse().unwrap()
    }

    fn or3() -> TruthTable {
        TruthTable::from_fn(3, |r| r != 0).unwrap()
    }

    #[test]
    fn or3_table_fixes_third_variable_to_zero() {
        let t = relevance_table(&or3(), 2).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.star_rows().count(), 0);
        for row in &t.rows {
            let cube = &row.cubes[0].cube;
            assert_eq!(cube.free(), row.w);
            assert_eq!(cube.fix().ones(), VarSet::empty());
        }
        // Rows: {1,2}|x3=0, {1,3}|x2=0, {2,3}|x1=0; union is every row with at most one 1
        // after taking the fixed variable into account.
        let set = t.test_set();
        assert_eq!(t.multiset().len(), 12);
        assert_eq!(set.len(), 7);
    }

    #[test]
    fn d_table_has_one_star_row() {
        let t = relevance_table(&d(), 2).unwrap();
        let stars: Vec<VarSet> = t.star_rows().map(|r| r.w).collect();
        assert_eq!(stars, vec![VarSet::from_mask(0b110)]);
        assert_eq!(t.multiset().len(), 8);
    }

    #[test]
    fn full_dimension_is_whole_cube() {
        let t = relevance_table(&d(), 3).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].cubes[0].cube, Hypercube::full(3));
        assert_eq!(t.test_set(), TestSet::from_table(&d()));
    }

    #[test]
    fn single_variable() {
        let x1 = TruthTable::var(1, 1).unwrap();
        let m = hypercube_set(&x1, 1).unwrap();
        assert_eq!(m.to_string(), "n=1\n0 0\n1 1\n");
    }

    #[test]
    fn errors() {
        let x1 = TruthTable::var(2, 1).unwrap();
        assert_eq!(relevance_table(&x1, 1), Err(Error::IrrelevantVariable(2)));
        assert!(matches!(
            relevance_table(&or3(), 4),
            Err(Error::InvalidArity { .. })
        ));
    }

    #[test]
    fn size_bound_examples() {
        assert_eq!(size_bound(3, 2), 12);
        assert_eq!(size_bound(5, 3), 80);
        for n in 1..=12 {
            assert_eq!(size_bound(n, n), 1 << n);
        }
        assert_eq!(size_bound(8, 4), 16 * 70);
    }

    #[test]
    fn test_set_file_round_trip_and_errors() {
        let m = hypercube_set(&or3(), 2).unwrap();
        assert_eq!(TestSet::parse(&m.to_string()).unwrap(), m);
        assert!(TestSet::parse("n=2\n01 1\n01 0\n").is_err());
        assert!(TestSet::parse("n=2\n011 1\n").is_err());
        assert!(TestSet::parse("x\n").is_err());
        assert!(TestSet::parse("n=2\n01 2\n").is_err());
    }

    #[test]
    fn reltable_text() {
        let t = relevance_table(&d(), 2).unwrap();
        let text = t.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[0],
            "w=1,2\thc:{free=1,2; fix=3=0} 000:0 100:0 010:1 110:0"
        );
        assert_eq!(lines[2], "w=2,3\t*");
    }

    #[test]
    fn all_cubes_mode_is_a_superset() {
        let one = hypercube_set(&d(), 2).unwrap();
        let all = hypercube_set_all(&d(), 2).unwrap();
        assert!(one.vectors().iter().all(|v| all.vectors().contains(v)));
        assert_eq!(relevance_table_all(&d(), 2).unwrap().rows[0].cubes.len(), 2);
    }
}
