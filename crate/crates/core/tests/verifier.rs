// SPDX-License-Identifier: Apache-2.0

use readonce::factor::is_read_once;
use readonce::testgen::{hypercube_set, hypercube_set_all, relevance_table, size_bound};
use readonce::verify::{
    enumerate_readonce, identify_from_test, is_checking_test, min_test, min_test_size,
};
use readonce::{ReadOnceTree, TestSet, TruthTable};

fn or_n(n: usize) -> TruthTable {
    TruthTable::from_fn(n, |r| r != 0).unwrap()
}

#[test]
fn minimal_test_sizes() {
    let c2 = enumerate_readonce(2, 2, true).unwrap();
    assert_eq!(min_test_size(&or_n(2), &c2).unwrap(), 4);
    let c3 = enumerate_readonce(3, 2, true).unwrap();
    assert_eq!(min_test_size(&or_n(3), &c3).unwrap(), 7);
    let m = min_test(&or_n(3), &c3).unwrap();
    assert!(is_checking_test(&or_n(3), &m, &c3).unwrap().is_checking());
}

#[test]
fn minimal_never_exceeds_hypercube_set() {
    for l in [2, 3] {
        let cat = enumerate_readonce(3, l, true).unwrap();
        for f in cat.targets() {
            let hs = hypercube_set(&f, l).unwrap();
            assert!(min_test_size(&f, &cat).unwrap() <= hs.len(), "{f}");
        }
    }
}

#[test]
fn factor_accepts_exactly_the_catalog() {
    for l in [2, 3] {
        let cat = enumerate_readonce(3, l, true).unwrap();
        for bits in 0..256u64 {
            let t = TruthTable::from_u64(3, bits).unwrap();
            assert_eq!(is_read_once(&t, l, true), cat.contains(&t), "{t} l={l}");
        }
    }
}

#[test]
fn full_table_identifies_every_member() {
    let cat = enumerate_readonce(3, 2, true).unwrap();
    for f in cat.tables() {
        assert_eq!(
            &identify_from_test(&TestSet::from_table(f), &cat).unwrap(),
            f
        );
    }
}

#[test]
fn test_sets_are_consistent_and_bounded() {
    for seed in 0..200 {
        let n = 1 + (seed % 7) as usize;
        let l = 2 + (seed % 3) as usize;
        let tree = ReadOnceTree::random(n, l, seed);
        let f = tree.truth_table();
        let l = l.min(n);
        let table = relevance_table(&f, l).unwrap();
        assert!(table.multiset().len() as u64 <= size_bound(n, l));
        for m in [
            hypercube_set(&f, l).unwrap(),
            hypercube_set_all(&f, l).unwrap(),
        ] {
            m.check_consistent(&f).unwrap();
            assert!(m.vectors().windows(2).all(|w| w[0].input < w[1].input));
        }
        // A read-once function of two or more variables has a hypercube for every pair.
        if l == 2 {
            assert_eq!(table.star_rows().count(), 0, "{tree}");
        }
    }
}

#[test]
fn test_file_round_trip() {
    let m = hypercube_set(&or_n(4), 3).unwrap();
    assert_eq!(TestSet::parse(&m.to_string()).unwrap(), m);
}
