// SPDX-License-Identifier: Apache-2.0

//! Frozen outputs of the seeded generator and the test-set construction.

use readonce::testgen::{hypercube_set, relevance_table};
use readonce::{ReadOnceTree, TruthTable};

const TREE: &str = include_str!("golden/random_tree_5_3_42.txt");
const OR3_TABLE: &str = include_str!("golden/or3_reltable_l2.txt");
const OR3_TEST: &str = include_str!("golden/or3_test_l2.txt");
const D_TABLE: &str = include_str!("golden/d_reltable_l2.txt");

fn or3() -> TruthTable {
    TruthTable::from_fn(3, |r| r != 0).unwrap()
}

#[test]
fn random_tree_is_stable_across_runs() {
    let mut lines = TREE.lines();
    let tree = ReadOnceTree::random(5, 3, 42);
    assert_eq!(tree.to_string(), lines.next().unwrap());
    assert_eq!(tree.truth_table().to_string(), lines.next().unwrap());
}

#[test]
fn golden_tree_table_matches_hand_evaluation() {
    // p:d1(~x1,~x3,xor(~x5,and(~x4,x2)))
    let h = |a: bool, b: bool, c: bool| {
        0xd1u32 >> (a as u32 | (b as u32) << 1 | (c as u32) << 2) & 1 == 1
    };
    let expected = TruthTable::from_fn(5, |r| {
        let x = |i: usize| r >> (i - 1) & 1 == 1;
        h(!x(1), !x(3), !x(5) ^ (!x(4) && x(2)))
    })
    .unwrap();
    assert_eq!(ReadOnceTree::random(5, 3, 42).truth_table(), expected);
}

#[test]
fn relevance_tables() {
    assert_eq!(relevance_table(&or3(), 2).unwrap().to_string(), OR3_TABLE);
    assert_eq!(hypercube_set(&or3(), 2).unwrap().to_string(), OR3_TEST);
    let d: TruthTable = "tt:3:e4".parse().unwrap();
    assert_eq!(relevance_table(&d, 2).unwrap().to_string(), D_TABLE);
}
