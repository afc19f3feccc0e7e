// SPDX-License-Identifier: Apache-2.0

//! Catalogs of read-once alternatives.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::par;
use crate::truth_table::TruthTable;
use crate::vars::VarSet;

/// Every `n`-variable table expressible by a read-once formula over `B_l` on
/// some subset of `x1..xn`, sorted ascending (the `tt:` text order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternativeCatalog {
    pub n: usize,
    pub l: usize,
    pub include_constants: bool,
    tables: Vec<TruthTable>,
}

/// Largest `n` accepted by [`enumerate_readonce`] for a given `l`.
pub fn catalog_limit(l: usize) -> usize {
    if l <= 2 {
        5
    } else {
        4
    }
}

/// All prime functions of exactly `m >= 3` variables.
pub fn prime_functions(m: usize) -> Vec<TruthTable> {
    assert!(
        (3..=4).contains(&m),
        "prime enumeration supports arity 3 and 4"
    );
    let count = 1usize << (1 << m);
    par::map_range(count, |bits| {
        let t = TruthTable::from_u64(m, bits as u64).expect("m <= 6");
        (t.depends_on_all() && t.is_prime_unchecked()).then_some(t)
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Set partitions of `s` into exactly `k` blocks.
fn partitions(s: VarSet, k: usize) -> Vec<Vec<VarSet>> {
    fn go(vars: &[usize], k: usize, cur: &mut Vec<VarSet>, out: &mut Vec<Vec<VarSet>>) {
        let Some((&v, rest)) = vars.split_first() else {
            if cur.len() == k {
                out.push(cur.clone());
            }
            return;
        };
        // Not enough variables left to open the missing blocks.
        if cur.len() + vars.len() < k {
            return;
        }
        for i in 0..cur.len() {
            cur[i].insert(v);
            go(rest, k, cur, out);
            cur[i].remove(v);
        }
        if cur.len() < k {
            cur.push(VarSet::singleton(v));
            go(rest, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&s.to_vec(), k, &mut Vec::new(), &mut out);
    out
}

/// Builds the catalog of read-once alternatives on `n` variables over `B_l`.
///
/// Functions depending on exactly a set `S` are generated bottom-up: literals
/// for singletons, `f ∘ g` over every split of `S` into two parts, and
/// `h(f_1, ..., f_m)` for every prime `h` of arity `3 <= m <= l` and every
/// partition of `S` into `m` blocks. Constants are added when requested.
pub fn enumerate_readonce(
    n: usize,
    l: usize,
    include_constants: bool,
) -> Result<AlternativeCatalog> {
    if n == 0 || l < 2 {
        return Err(Error::InvalidArity { l, n });
    }
    let limit = catalog_limit(l);
    if n > limit {
        return Err(Error::CostGuard { n, l, limit });
    }
    let max_prime = l.min(n);
    let primes: HashMap<usize, Vec<TruthTable>> =
        (3..=max_prime).map(|m| (m, prime_functions(m))).collect();

    let mut by_support: HashMap<VarSet, Vec<TruthTable>> = HashMap::new();
    let mut supports: Vec<VarSet> = VarSet::full(n)
        .subsets()
        .filter(|s| !s.is_empty())
        .collect();
    supports.sort_by_key(|s| (s.len(), s.mask()));
    for s in supports {
        let mut found: HashSet<TruthTable> = HashSet::new();
        if s.len() == 1 {
            let v = TruthTable::var(n, s.first().expect("non-empty"))?;
            found.insert(!&v);
            found.insert(v);
        } else {
            let first = s.first().expect("non-empty");
            let rest = s.difference(VarSet::singleton(first));
            for extra in rest.subsets() {
                let a = extra.with(first);
                if a == s {
                    continue;
                }
                let b = s.difference(a);
                for f in &by_support[&a] {
                    for g in &by_support[&b] {
                        found.insert(f & g);
                        found.insert(f | g);
                        found.insert(f ^ g);
                    }
                }
            }
            for m in 3..=max_prime.min(s.len()) {
                for blocks in partitions(s, m) {
                    let choices: Vec<&Vec<TruthTable>> =
                        blocks.iter().map(|b| &by_support[b]).collect();
                    let combos = cartesian(&choices);
                    for h in &primes[&m] {
                        for args in &combos {
                            found.insert(TruthTable::compose(h, args)?);
                        }
                    }
                }
            }
        }
        by_support.insert(s, found.into_iter().collect());
    }

    let mut tables: Vec<TruthTable> = by_support.into_values().flatten().collect();
    if include_constants {
        tables.push(TruthTable::constant(n, false)?);
        tables.push(TruthTable::constant(n, true)?);
    }
    tables.sort();
    tables.dedup();
    Ok(AlternativeCatalog {
        n,
        l,
        include_constants,
        tables,
    })
}

fn cartesian(choices: &[&Vec<TruthTable>]) -> Vec<Vec<TruthTable>> {
    let mut out: Vec<Vec<TruthTable>> = vec![Vec::new()];
    for options in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |t| {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    p
                })
            })
            .collect();
    }
    out
}

impl AlternativeCatalog {
    pub fn tables(&self) -> &[TruthTable] {
        &self.tables
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn contains(&self, tt: &TruthTable) -> bool {
        self.tables.binary_search(tt).is_ok()
    }

    /// Members depending on all `n` variables (the admissible targets).
    pub fn targets(&self) -> Vec<TruthTable> {
        self.tables
            .iter()
            .filter(|t| t.depends_on_all())
            .cloned()
            .collect()
    }

    fn header(n: usize, l: usize, include_constants: bool) -> String {
        let flags = if include_constants {
            "constants"
        } else {
            "no-constants"
        };
        format!("{n},{l},{flags}")
    }

    /// The cache file contents: a `n,l,flags` header, then one `tt:` line per member.
    pub fn to_text(&self) -> String {
        let mut s = Self::header(self.n, self.l, self.include_constants);
        s.push('\n');
        for t in &self.tables {
            s.push_str(&t.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<AlternativeCatalog> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().unwrap_or_default();
        let bad = || Error::Parse {
            token: header.to_string(),
            position: 0,
            message: "expected `n,l,flags` header".into(),
        };
        let parts: Vec<&str> = header.split(',').collect();
        let [n, l, flags] = parts.as_slice() else {
            return Err(bad());
        };
        let n: usize = n.parse().map_err(|_| bad())?;
        let l: usize = l.parse().map_err(|_| bad())?;
        let include_constants = match *flags {
            "constants" => true,
            "no-constants" => false,
            _ => return Err(bad()),
        };
        let mut tables = lines
            .map(|line| {
                let t: TruthTable = line.parse()?;
                if t.num_vars() != n {
                    return Err(Error::VarCountMismatch {
                        expected: n,
                        found: t.num_vars(),
                    });
                }
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()?;
        tables.sort();
        tables.dedup();
        Ok(AlternativeCatalog {
            n,
            l,
            include_constants,
            tables,
        })
    }

    /// Loads the catalog from `path`, or builds it and writes the file when the
    /// file is missing, unreadable or has a different header.
    pub fn load_or_build(
        path: &Path,
        n: usize,
        l: usize,
        include_constants: bool,
    ) -> Result<AlternativeCatalog> {
        if let Ok(text) = fs::read_to_string(path) {
            let expected = Self::header(n, l, include_constants);
            if text.lines().next().map(str::trim) == Some(expected.as_str()) {
                if let Ok(cat) = Self::parse(&text) {
                    return Ok(cat);
                }
            }
        }
        let cat = enumerate_readonce(n, l, include_constants)?;
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        fs::write(path, cat.to_text())?;
        Ok(cat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_catalogs() {
        let c = enumerate_readonce(1, 2, false).unwrap();
        assert_eq!(c.len(), 2);
        let c = enumerate_readonce(2, 2, false).unwrap();
        assert_eq!(c.len(), 14);
        let c = enumerate_readonce(2, 2, true).unwrap();
        assert_eq!(c.len(), 16);
        assert_eq!(c.targets().len(), 10);
    }

    #[test]
    fn partitions_count_matches_stirling_numbers() {
        let s = VarSet::full(5);
        assert_eq!(partitions(s, 1).len(), 1);
        assert_eq!(partitions(s, 2).len(), 15);
        assert_eq!(partitions(s, 3).len(), 25);
        assert_eq!(partitions(s, 5).len(), 1);
    }

    #[test]
    fn cost_guard() {
        assert_eq!(
            enumerate_readonce(6, 2, true),
            Err(Error::CostGuard {
                n: 6,
                l: 2,
                limit: 5
            })
        );
        assert!(matches!(
            enumerate_readonce(5, 3, true),
            Err(Error::CostGuard { .. })
        ));
    }

    #[test]
    fn cache_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.txt");
        let built = AlternativeCatalog::load_or_build(&path, 3, 2, true).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("3,2,constants\n"));
        let loaded = AlternativeCatalog::load_or_build(&path, 3, 2, true).unwrap();
        assert_eq!(built, loaded);
        // Header mismatch regenerates.
        let other = AlternativeCatalog::load_or_build(&path, 3, 2, false).unwrap();
        assert_eq!(other.len(), built.len() - 2);
        assert!(fs::read_to_string(&path)
            .unwrap()
            .starts_with("3,2,no-constants\n"));
    }
}
