// SPDX-License-Identifier: Apache-2.0

//! Cross-checks the catalog builder against a naive enumeration of read-once
//! formulas that allows every gate of arity at most `l`, degenerate ones
//! included, and works on raw bitmasks only.

use std::collections::{BTreeSet, HashMap};

use readonce::verify::enumerate_readonce;

/// Bitmask table of variable `i` (1-based) over `n` variables.
fn var_mask(n: usize, i: usize) -> u64 {
    (0..1u64 << n)
        .filter(|r| r >> (i - 1) & 1 == 1)
        .fold(0, |m, r| m | 1 << r)
}

/// Applies gate `g` (a `k`-ary table given as bits) to argument tables.
fn apply(n: usize, g: u64, args: &[u64]) -> u64 {
    (0..1usize << n).fold(0, |acc, row| {
        let idx = args
            .iter()
            .enumerate()
            .fold(0usize, |i, (j, a)| i | ((a >> row & 1) as usize) << j);
        acc | (g >> idx & 1) << row
    })
}

/// Ordered splits of `s` into `k` disjoint (possibly empty) parts.
fn ordered_splits(s: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![s]];
    }
    let mut out = Vec::new();
    let mut sub = s;
    loop {
        for mut rest in ordered_splits(s & !sub, k - 1) {
            rest.insert(0, sub);
            out.push(rest);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & s;
    }
    out
}

/// All tables of read-once formulas over `B_l` whose leaves are exactly the
/// variables of each support; unioned over supports.
fn oracle(n: usize, l: usize) -> BTreeSet<u64> {
    let full = (1u32 << n) - 1;
    let mut r: HashMap<u32, BTreeSet<u64>> = HashMap::new();
    let mut supports: Vec<u32> = (0..=full).collect();
    supports.sort_by_key(|s| (s.count_ones(), *s));
    for s in supports {
        let mut set: BTreeSet<u64> = BTreeSet::new();
        if s.count_ones() == 1 {
            set.insert(var_mask(n, s.trailing_zeros() as usize + 1));
        }
        // Zero-ary gates are the constants.
        if s == 0 {
            set.insert(0);
            set.insert(if n == 6 {
                u64::MAX
            } else {
                (1u64 << (1 << n)) - 1
            });
        }
        // Gates may take an argument with the same support, so iterate to a fixpoint.
        loop {
            let before = set.len();
            for k in 1..=l {
                for parts in ordered_splits(s, k) {
                    let choices: Vec<Vec<u64>> = parts
                        .iter()
                        .map(|p| {
                            if *p == s {
                                set.iter().copied().collect()
                            } else {
                                r[p].iter().copied().collect()
                            }
                        })
                        .collect();
                    if choices.iter().any(Vec::is_empty) {
                        continue;
                    }
                    let mut tuples: Vec<Vec<u64>> = vec![vec![]];
                    for c in &choices {
                        tuples = tuples
                            .into_iter()
                            .flat_map(|t| {
                                c.iter().map(move |x| {
                                    let mut t = t.clone();
                                    t.push(*x);
                                    t
                                })
                            })
                            .collect();
                    }
                    for g in 0..1u64 << (1 << k) {
                        for t in &tuples {
                            set.insert(apply(n, g, t));
                        }
                    }
                }
            }
            if set.len() == before {
                break;
            }
        }
        r.insert(s, set);
    }
    r.into_values().flatten().collect()
}

fn catalog_bits(n: usize, l: usize) -> BTreeSet<u64> {
    enumerate_readonce(n, l, true)
        .unwrap()
        .tables()
        .iter()
        .map(|t| t.as_u64().unwrap())
        .collect()
}

#[test]
fn catalog_matches_formula_enumeration() {
    for (n, l) in [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3)] {
        assert_eq!(catalog_bits(n, l), oracle(n, l), "n={n} l={l}");
    }
}

#[test]
fn catalog_counts() {
    assert_eq!(oracle(3, 2).len(), 152);
    assert_eq!(enumerate_readonce(3, 2, true).unwrap().len(), 152);
    assert_eq!(enumerate_readonce(3, 2, false).unwrap().len(), 150);
    // Every 3-variable function is a single gate of B_3.
    assert_eq!(enumerate_readonce(3, 3, true).unwrap().len(), 256);
    assert_eq!(enumerate_readonce(4, 2, true).unwrap().len(), 2680);
    assert_eq!(enumerate_readonce(4, 3, true).unwrap().len(), 8296);
}
