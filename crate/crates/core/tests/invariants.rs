// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use readonce::factor::factor;
use readonce::{Formula, PartialAssignment, ReadOnceTree, SimilarityWitness, TruthTable, VarSet};

fn table(max_n: usize) -> impl Strategy<Value = TruthTable> {
    (1..=max_n).prop_flat_map(|n| {
        any::<u64>().prop_map(move |bits| {
            let mask = if n == 6 {
                u64::MAX
            } else {
                (1u64 << (1 << n)) - 1
            };
            TruthTable::from_u64(n, bits & mask).unwrap()
        })
    })
}

fn witness(n: usize) -> impl Strategy<Value = SimilarityWitness> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(any::<bool>(), n),
        any::<bool>(),
    )
        .prop_map(
            |(perm, input_polarity, output_polarity)| SimilarityWitness {
                perm,
                input_polarity,
                output_polarity,
            },
        )
}

fn tree() -> impl Strategy<Value = ReadOnceTree> {
    (1usize..=7, 2usize..=4, any::<u64>()).prop_map(|(n, l, seed)| ReadOnceTree::random(n, l, seed))
}

proptest! {
    #[test]
    fn restrictions_compose(t in table(6), a in any::<u32>(), b in any::<u32>(), v in any::<u32>()) {
        let n = t.num_vars();
        let full = VarSet::full(n).mask();
        let first = VarSet::from_mask(a & full);
        let second = VarSet::from_mask(b & full).difference(first);
        let p = PartialAssignment::from_index(n, first, v as usize);
        let q = PartialAssignment::from_index(n, second, (v >> 8) as usize);
        let both = t.restrict(&p.merge(&q).unwrap()).unwrap();
        // Restricting by p shrinks the variable set; rename q's variables into it.
        let once = t.restrict(&p).unwrap();
        let remaining = first.complement(n);
        let mut q_in = PartialAssignment::empty(once.num_vars());
        for (j, var) in remaining.iter().enumerate() {
            if let Some(value) = q.value(var) {
                q_in.bind(j + 1, value).unwrap();
            }
        }
        prop_assert_eq!(once.restrict(&q_in).unwrap(), both);
    }

    #[test]
    fn relevant_vars_survive_restriction(t in table(6), a in any::<u32>(), v in any::<u32>()) {
        let n = t.num_vars();
        let bound = VarSet::from_mask(a & VarSet::full(n).mask());
        let r = t.restrict(&PartialAssignment::from_index(n, bound, v as usize)).unwrap();
        let kept: Vec<usize> = bound.complement(n).to_vec();
        for var in r.relevant_vars().iter() {
            prop_assert!(t.depends_on(kept[var - 1]));
        }
    }

    #[test]
    fn similarity_is_an_equivalence((t, w) in table(4).prop_flat_map(|t| { let n = t.num_vars(); (Just(t), witness(n)) })) {
        let g = t.transform(&w).unwrap();
        let found = t.similar(&g).unwrap();
        prop_assert!(found.is_some());
        prop_assert_eq!(g.transform(&found.unwrap()).unwrap(), t.clone());
        prop_assert_eq!(g.transform(&w.inverse()).unwrap(), t.clone());
        prop_assert!(g.similar(&t).unwrap().is_some());
        prop_assert!(t.similar(&t).unwrap().is_some());
    }

    #[test]
    fn primality_is_similarity_invariant((t, w) in table(4).prop_flat_map(|t| { let n = t.num_vars(); (Just(t), witness(n)) })) {
        prop_assume!(t.num_vars() >= 3 && t.depends_on_all());
        let g = t.transform(&w).unwrap();
        prop_assert_eq!(t.is_prime().unwrap(), g.is_prime().unwrap());
    }

    #[test]
    fn bound_sets_recompose(t in table(5), a in any::<u32>()) {
        let n = t.num_vars();
        let s = VarSet::from_mask(a & VarSet::full(n).mask());
        prop_assume!(s.len() >= 2 && s.len() < n);
        if let Some(h) = t.is_bound_set(s).unwrap() {
            prop_assert!(h.depends_on_all());
            let rest = s.complement(n);
            let h_full = h.embed(n, s).unwrap();
            // g takes h's value as its first input, then the rest in order.
            let recomposed = TruthTable::from_fn(n, |row| {
                let fix = PartialAssignment::from_index(n, rest, rest.extract(row));
                let r = t.restrict(&fix).unwrap();
                match r.constant_value() {
                    Some(c) => c,
                    None => if r == h { h_full.get(row) } else { !h_full.get(row) },
                }
            }).unwrap();
            prop_assert_eq!(recomposed, t);
        }
    }

    #[test]
    fn trees_print_and_parse(t in tree()) {
        let text = t.to_string();
        let back = ReadOnceTree::parse(&text, t.l()).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back.truth_table(), t.truth_table());
        prop_assert!(t.validate(t.l()).is_empty());
    }

    #[test]
    fn canonicalize_keeps_the_function(t in tree(), neg in any::<bool>()) {
        let text = if neg { format!("~{t}") } else { t.to_string() };
        let f = Formula::parse(&text).unwrap();
        let c = ReadOnceTree::canonicalize(&f, t.l()).unwrap();
        let expected = if neg { !&t.truth_table() } else { t.truth_table() };
        prop_assert_eq!(c.truth_table(), expected);
        prop_assert!(c.validate(t.l()).is_empty());
    }

    #[test]
    fn factor_round_trips(t in tree()) {
        let f = t.truth_table();
        let back = factor(&f, t.l()).unwrap();
        prop_assert_eq!(back.truth_table(), f);
        prop_assert!(readonce::trees_equivalent(&back, &t).unwrap());
    }
}
