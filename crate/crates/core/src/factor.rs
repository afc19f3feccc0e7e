// SPDX-License-Identifier: Apache-2.0

//! Recognition of read-once functions over `B_l` and reconstruction of their
//! canonical trees.
//!
//! The engine is exhaustive over variable subsets and meant for small `n`
//! (it stays practical up to about 12 variables):
//!
//! 1. one variable gives a literal;
//! 2. otherwise, if the function splits as `h_1(X_1) ∘ ... ∘ h_k(X_k)` for
//!    `∘ ∈ {and, or, xor}`, the finest such split becomes a `∘` node;
//! 3. otherwise the maximal proper bound sets must partition the variables;
//!    their outer function has to be prime with arity at most `l`;
//! 4. anything else is not read-once over `B_l`.
//!
//! Every tree returned is checked against the input table before it is
//! handed out.

use crate::par;
use crate::tree::{Gate, ReadOnceTree};
use crate::truth_table::TruthTable;
use crate::vars::{PartialAssignment, VarSet};

#[derive(Clone, Debug)]
enum Shape {
    Leaf { var: usize, negated: bool },
    Gate(Gate, Vec<Shape>),
}

impl Shape {
    fn render(&self, out: &mut String) {
        match self {
            Shape::Leaf { var, negated } => {
                if *negated {
                    out.push('~');
                }
                out.push_str(&format!("x{var}"));
            }
            Shape::Gate(g, kids) => {
                out.push_str(&format!("{g}("));
                for (i, k) in kids.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    k.render(out);
                }
                out.push(')');
            }
        }
    }
}

/// Reconstructs the canonical read-once tree of `tt` over `B_l`, or `None` if
/// `tt` is not read-once over `B_l`.
///
/// Irrelevant variables are ignored: the leaves of the result are exactly the
/// relevant variables, with their original indices. Constants have no tree
/// and give `None`.
pub fn factor(tt: &TruthTable, l: usize) -> Option<ReadOnceTree> {
    if tt.is_constant() || l < 2 {
        return None;
    }
    let vars = tt.relevant_vars();
    let core = if vars.len() == tt.num_vars() {
        tt.clone()
    } else {
        let irrelevant = vars.complement(tt.num_vars());
        tt.restrict(&PartialAssignment::from_index(tt.num_vars(), irrelevant, 0))
            .expect("in range")
    };
    let shape = factor_rec(&core, &vars.to_vec(), l)?;
    let mut text = String::new();
    shape.render(&mut text);
    let tree = ReadOnceTree::parse(&text, l).expect("factor emits well-formed formulas");
    (tree.truth_table() == core).then_some(tree)
}

/// True iff `tt` is read-once over `B_l` on some subset of its variables;
/// constants count as read-once when `include_constants` is set.
pub fn is_read_once(tt: &TruthTable, l: usize, include_constants: bool) -> bool {
    if tt.is_constant() {
        include_constants
    } else {
        factor(tt, l).is_some()
    }
}

/// `tt` depends on all of its variables; `names[i]` is the original index of
/// its variable `i + 1`.
fn factor_rec(tt: &TruthTable, names: &[usize], l: usize) -> Option<Shape> {
    let n = tt.num_vars();
    if n == 1 {
        return Some(Shape::Leaf {
            var: names[0],
            negated: !tt.get(1),
        });
    }
    if let Some((gate, blocks)) = symbol_split(tt) {
        debug_assert!(prime_split(tt, usize::MAX).is_none());
        let mut kids = Vec::with_capacity(blocks.len());
        for (vars, h) in blocks {
            let sub: Vec<usize> = vars.iter().map(|v| names[v - 1]).collect();
            kids.push(factor_rec(&h, &sub, l)?);
        }
        return Some(Shape::Gate(gate, kids));
    }
    let (outer, blocks) = prime_split(tt, l)?;
    let mut kids = Vec::with_capacity(blocks.len());
    for (vars, h) in blocks {
        let sub: Vec<usize> = vars.iter().map(|v| names[v - 1]).collect();
        kids.push(factor_rec(&h, &sub, l)?);
    }
    Some(Shape::Gate(Gate::Prime(outer), kids))
}

fn symbol_combine(gate: &Gate, parts: &[TruthTable]) -> TruthTable {
    let first = parts[0].clone();
    parts[1..].iter().fold(first, |acc, p| match gate {
        Gate::And => &acc & p,
        Gate::Or => &acc | p,
        _ => &acc ^ p,
    })
}

/// The component of `tt` on `block` for a split under `gate`, as a table over
/// `block` (ascending). For `and` this is the projection existentially
/// quantified over the other variables, for `or` the universal one, for `xor`
/// the restriction with every other variable at 0.
fn component(tt: &TruthTable, block: VarSet, gate: &Gate) -> TruthTable {
    let n = tt.num_vars();
    let rest = block.complement(n);
    let k = block.len();
    TruthTable::from_fn(k, |i| {
        let base = block.deposit(i);
        match gate {
            Gate::And => (0..1usize << rest.len()).any(|r| tt.get(base | rest.deposit(r))),
            Gate::Or => (0..1usize << rest.len()).all(|r| tt.get(base | rest.deposit(r))),
            _ => tt.get(base),
        }
    })
    .expect("small")
}

/// Whether `tt` decomposes as `g(S) ∘ h(rest)`.
fn splits_along(tt: &TruthTable, s: VarSet, gate: &Gate) -> bool {
    let n = tt.num_vars();
    let rest = s.complement(n);
    let a = component(tt, s, gate).embed(n, s).expect("fits");
    let b = component(tt, rest, gate).embed(n, rest).expect("fits");
    let rebuilt = match gate {
        Gate::And => &a & &b,
        Gate::Or => &a | &b,
        _ => &(&a ^ &b) ^ &TruthTable::constant(n, tt.get(0)).expect("fits"),
    };
    &rebuilt == tt
}

type Blocks = Vec<(VarSet, TruthTable)>;

/// Finest `and`/`or`/`xor` decomposition, if any. Variables share a block
/// when no split under the symbol separates them.
fn symbol_split(tt: &TruthTable) -> Option<(Gate, Blocks)> {
    let n = tt.num_vars();
    let full = VarSet::full(n);
    // Splits containing x1 suffice: the complement of a split is a split.
    let candidates: Vec<VarSet> = VarSet::full(n)
        .difference(VarSet::singleton(1))
        .subsets()
        .map(|s| s.with(1))
        .filter(|&s| s != full)
        .collect();
    for gate in [Gate::And, Gate::Or, Gate::Xor] {
        let ok = par::map_slice(&candidates, |&s| splits_along(tt, s, &gate));
        let splits: Vec<VarSet> = candidates
            .iter()
            .zip(ok)
            .filter_map(|(&s, ok)| ok.then_some(s))
            .collect();
        if splits.is_empty() {
            continue;
        }
        let signature = |v: usize| -> Vec<bool> { splits.iter().map(|s| s.contains(v)).collect() };
        let mut blocks: Vec<(Vec<bool>, VarSet)> = Vec::new();
        for v in 1..=n {
            let sig = signature(v);
            match blocks.iter_mut().find(|(s, _)| *s == sig) {
                Some((_, b)) => b.insert(v),
                None => blocks.push((sig, VarSet::singleton(v))),
            }
        }
        let parts: Blocks = blocks
            .into_iter()
            .map(|(_, b)| {
                let mut h = component(tt, b, &gate);
                if gate == Gate::Xor && b.first() != Some(1) && tt.get(0) {
                    // Only the first block keeps the constant term f(0).
                    h = !h;
                }
                (b, h)
            })
            .collect();
        let embedded: Vec<TruthTable> = parts
            .iter()
            .map(|(b, h)| h.embed(n, *b).expect("fits"))
            .collect();
        if &symbol_combine(&gate, &embedded) != tt {
            return None;
        }
        return Some((gate, parts));
    }
    None
}

/// Splits `tt` at a prime root: the maximal proper bound sets (plus singletons
/// for uncovered variables) must be disjoint, at most `l` in number, and their
/// outer function prime.
fn prime_split(tt: &TruthTable, l: usize) -> Option<(TruthTable, Blocks)> {
    let n = tt.num_vars();
    if n < 3 {
        return None;
    }
    let candidates: Vec<VarSet> = VarSet::full(n)
        .subsets()
        .filter(|s| s.len() > 1 && s.len() < n)
        .collect();
    let inner = par::map_slice(&candidates, |&s| tt.bound_set_inner(s));
    let bound: Vec<(VarSet, TruthTable)> = candidates
        .into_iter()
        .zip(inner)
        .filter_map(|(s, h)| h.map(|h| (s, h)))
        .collect();
    let maximal: Vec<&(VarSet, TruthTable)> = bound
        .iter()
        .filter(|(s, _)| !bound.iter().any(|(t, _)| t != s && s.is_subset(*t)))
        .collect();
    let mut covered = VarSet::empty();
    let mut blocks: Blocks = Vec::new();
    for (s, h) in maximal {
        if !covered.is_disjoint(*s) {
            return None;
        }
        covered = covered.union(*s);
        blocks.push((*s, h.clone()));
    }
    for v in covered.complement(n).iter() {
        blocks.push((VarSet::singleton(v), TruthTable::var(1, 1).expect("n = 1")));
    }
    blocks.sort_by_key(|(s, _)| s.first());
    let s = blocks.len();
    if s < 3 || s > l {
        return None;
    }
    // Points of each block where its inner function is 0 and 1.
    let witnesses: Vec<[usize; 2]> = blocks
        .iter()
        .map(|(b, h)| {
            let zero = (0..h.len()).find(|&i| !h.get(i)).expect("non-constant");
            let one = (0..h.len()).find(|&i| h.get(i)).expect("non-constant");
            [b.deposit(zero), b.deposit(one)]
        })
        .collect();
    let outer = TruthTable::from_fn(s, |y| {
        let row = witnesses
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, w)| acc | w[y >> i & 1]);
        tt.get(row)
    })
    .expect("small");
    if !outer.depends_on_all() || !outer.is_prime_unchecked() {
        return None;
    }
    let embedded: Vec<TruthTable> = blocks
        .iter()
        .map(|(b, h)| h.embed(n, *b).expect("fits"))
        .collect();
    if &TruthTable::compose(&outer, &embedded).expect("arity") != tt {
        return None;
    }
    Some((outer, blocks))
}

/// Whether two trees of the same variables are the same up to negations:
/// equal truth tables, and for every internal node of either tree a node of
/// the other with the same leaf set computing an equal or complementary
/// function.
pub fn trees_equivalent(a: &ReadOnceTree, b: &ReadOnceTree) -> crate::Result<bool> {
    if a.leaf_vars() != b.leaf_vars() {
        return Err(crate::Error::VarCountMismatch {
            expected: a.leaf_vars().len(),
            found: b.leaf_vars().len(),
        });
    }
    if a.truth_table() != b.truth_table() {
        return Ok(false);
    }
    Ok(covers(a, b) && covers(b, a))
}

fn covers(a: &ReadOnceTree, b: &ReadOnceTree) -> bool {
    let sets_a = a.leaf_sets();
    let sets_b = b.leaf_sets();
    let internal_b = b.internal_nodes();
    a.internal_nodes().into_iter().all(|id| {
        let set = sets_a[id.0];
        let Some(&other) = internal_b.iter().find(|o| sets_b[o.0] == set) else {
            return false;
        };
        let fa = a.node_table(id);
        let fb = b.node_table(other);
        fa == fb || fa == !fb
    })
}
