// SPDX-License-Identifier: Apache-2.0

//! Seeded property suites over random read-once trees.
//!
//! - `lemma2`: conservative sets of at most `l` variables are stable;
//! - `prop2`: every relevance hypercube expands to any larger dimension;
//! - `prop3`: variables taken from distinct subtrees of a node have
//!   relevance hypercubes, and every restriction to them is similar to the
//!   node's prime label or to the `∘`-chain of the node's symbol;
//! - `roundtrip`: factoring the table of a tree gives back an equivalent tree.
//!
//! Each case derives its own seed from the run seed, so a failing case can be
//! replayed alone with the `*_case` functions.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::factor::{factor, trees_equivalent};
use crate::hypercube::{
    expand_hypercube, find_hypercubes, find_one_hypercube, is_stable, restriction_on, Stability,
};
use crate::par;
use crate::tree::{Gate, NodeKind, ReadOnceTree};
use crate::truth_table::TruthTable;
use crate::vars::VarSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Stability,
    Expansion,
    Similarity,
    RoundTrip,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Stability,
        Suite::Expansion,
        Suite::Similarity,
        Suite::RoundTrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Stability => "lemma2",
            Suite::Expansion => "prop2",
            Suite::Similarity => "prop3",
            Suite::RoundTrip => "roundtrip",
        }
    }

    fn index(self) -> u64 {
        self as u64
    }

    /// Runs one case; `Err` describes the failure.
    pub fn run_case(self, case_seed: u64) -> Result<(), String> {
        match self {
            Suite::Stability => stability_case(case_seed),
            Suite::Expansion => expansion_case(case_seed),
            Suite::Similarity => similarity_case(case_seed),
            Suite::RoundTrip => roundtrip_case(case_seed),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse {
                token: s.to_string(),
                position: 0,
                message: "unknown suite (lemma2, prop2, prop3, roundtrip)".into(),
            })
    }
}

/// Number of cases per suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub stability: usize,
    pub expansion: usize,
    pub similarity: usize,
    pub roundtrip: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            stability: 500,
            expansion: 500,
            similarity: 200,
            roundtrip: 1000,
        }
    }
}

impl Budget {
    pub fn uniform(cases: usize) -> Self {
        Budget {
            stability: cases,
            expansion: cases,
            similarity: cases,
            roundtrip: cases,
        }
    }

    pub fn cases(&self, suite: Suite) -> usize {
        match suite {
            Suite::Stability => self.stability,
            Suite::Expansion => self.expansion,
            Suite::Similarity => self.similarity,
            Suite::RoundTrip => self.roundtrip,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFailure {
    pub case_seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            let verdict = if s.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{verdict} {} cases={} failures={}",
                s.suite,
                s.cases,
                s.failures.len()
            )?;
            for c in &s.failures {
                writeln!(f, "  case_seed={} {}", c.case_seed, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Seed of case `i` of `suite` in a run seeded with `seed` (splitmix64 mixing).
pub fn case_seed(seed: u64, suite: Suite, i: usize) -> u64 {
    let mut z = seed
        .wrapping_add(suite.index().wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs the suites selected by `filter` (all when `None`). Suites with a
/// zero budget are left out of the report.
pub fn property_suites(seed: u64, budget: &Budget, filter: Option<Suite>) -> PropertyReport {
    let suites = Suite::ALL
        .into_iter()
        .filter(|s| filter.is_none_or(|f| f == *s))
        .filter(|s| budget.cases(*s) > 0)
        .map(|suite| {
            let cases = budget.cases(suite);
            let results = par::map_range(cases, |i| {
                let cs = case_seed(seed, suite, i);
                suite.run_case(cs).err().map(|detail| CaseFailure {
                    case_seed: cs,
                    detail,
                })
            });
            SuiteReport {
                suite,
                cases,
                failures: results.into_iter().flatten().collect(),
            }
        })
        .collect();
    PropertyReport { seed, suites }
}

fn random_tree(
    rng: &mut ChaCha8Rng,
    n_range: std::ops::RangeInclusive<usize>,
    ls: &[usize],
) -> (ReadOnceTree, usize) {
    let n = rng.gen_range(n_range);
    let l = *ls.choose(rng).expect("non-empty");
    (ReadOnceTree::random(n, l, rng.gen()), l)
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, size: usize) -> VarSet {
    (1..=n).choose_multiple(rng, size).into_iter().collect()
}

/// A random tree on at most 6 variables and a conservative set `u` with
/// `|u| <= l`; `u` must be stable.
pub fn stability_case(case_seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    let (tree, l) = random_tree(&mut rng, 1..=6, &[2, 3, 4]);
    let n = tree.leaf_vars().len();
    // Singletons are trivially stable, so prefer larger sets.
    let size = rng.gen_range(2.min(n)..=l.min(n));
    let u = (0..64)
        .map(|_| random_subset(&mut rng, n, size))
        .find(|&u| tree.is_conservative(u))
        .unwrap_or_else(|| VarSet::singleton(rng.gen_range(1..=n)));
    let tt = tree.truth_table();
    match is_stable(&tt, u).map_err(|e| e.to_string())? {
        Stability::Stable => Ok(()),
        Stability::Unstable(v) => Err(format!(
            "tree {tree}: conservative u={{{u}}} unstable at w={{{}}} {}",
            v.w, v.cube
        )),
    }
}

/// A random tree, a set `u` with a relevance hypercube and a target dimension;
/// expansion must succeed and keep `u` free.
pub fn expansion_case(case_seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    let (tree, _) = random_tree(&mut rng, 1..=6, &[2, 3, 4]);
    let n = tree.leaf_vars().len();
    let tt = tree.truth_table();
    let mut found = None;
    for _ in 0..64 {
        let size = rng.gen_range(1..=n);
        let u = random_subset(&mut rng, n, size);
        if let Some(h) = find_one_hypercube(&tt, u).map_err(|e| e.to_string())? {
            found = Some((u, h));
            break;
        }
    }
    let (u, h) = match found {
        Some(x) => x,
        None => {
            let u = VarSet::singleton(rng.gen_range(1..=n));
            let h = find_one_hypercube(&tt, u)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("tree {tree}: no hypercube for singleton {{{u}}}"))?;
            (u, h)
        }
    };
    let q = rng.gen_range(u.len()..=n);
    let e = expand_hypercube(&tt, &h, q)
        .map_err(|e| format!("tree {tree}: expanding {h} to {q}: {e}"))?;
    if e.dim() != q || !u.is_subset(e.free()) || !e.is_relevance_hypercube(&tt) {
        return Err(format!("tree {tree}: bad expansion {h} -> {e} (q={q})"));
    }
    Ok(())
}

/// The `∘`-chain `z_1 ∘ ... ∘ z_p` as a `p`-variable table.
fn chain(gate: &Gate, p: usize) -> TruthTable {
    TruthTable::from_fn(p, |r| {
        let ones = r.count_ones() as usize;
        match gate {
            Gate::And => ones == p,
            Gate::Or => ones > 0,
            _ => ones % 2 == 1,
        }
    })
    .expect("small")
}

/// One variable from each of `p` distinct subtrees of a random internal node
/// (all subtrees for a prime node); every hypercube restriction must be
/// similar to the node's label or symbol chain.
pub fn similarity_case(case_seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    let (tree, _) = random_tree(&mut rng, 2..=6, &[2, 3, 4]);
    let internal = tree.internal_nodes();
    let v = *internal.choose(&mut rng).expect("n >= 2 has a gate");
    let node = tree.node(v);
    let sets = tree.leaf_sets();
    let NodeKind::Gate(gate) = &node.kind else {
        unreachable!("internal node")
    };
    let children: Vec<_> = match gate {
        Gate::Prime(_) => node.children.clone(),
        _ => {
            let p = rng.gen_range(2..=node.children.len());
            node.children
                .choose_multiple(&mut rng, p)
                .copied()
                .collect()
        }
    };
    let u: VarSet = children
        .iter()
        .map(|c| {
            *sets[c.0]
                .to_vec()
                .choose(&mut rng)
                .expect("non-empty subtree")
        })
        .collect();
    let reference = match gate {
        Gate::Prime(h) => h.clone(),
        g => chain(g, children.len()),
    };
    let tt = tree.truth_table();
    let cubes = find_hypercubes(&tt, u).map_err(|e| e.to_string())?;
    if cubes.is_empty() {
        return Err(format!("tree {tree}: no hypercube for u={{{u}}}"));
    }
    for c in cubes {
        let r = restriction_on(&tt, &c).map_err(|e| e.to_string())?;
        if r.similar(&reference).map_err(|e| e.to_string())?.is_none() {
            return Err(format!(
                "tree {tree}: restriction {r} on {c} not similar to {reference}"
            ));
        }
    }
    Ok(())
}

/// Factoring the table of a random tree (`n <= 8`, `l` in {3, 4}) must give an
/// equivalent, valid tree.
pub fn roundtrip_case(case_seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    let (tree, l) = random_tree(&mut rng, 1..=8, &[3, 4]);
    let tt = tree.truth_table();
    let back = factor(&tt, l).ok_or_else(|| format!("tree {tree}: factor rejected {tt}"))?;
    if back.truth_table() != tt {
        return Err(format!(
            "tree {tree}: factored {back} computes another table"
        ));
    }
    let violations = back.validate(l);
    if !violations.is_empty() {
        return Err(format!(
            "tree {tree}: factored {back} invalid: {violations:?}"
        ));
    }
    if !trees_equivalent(&back, &tree).map_err(|e| e.to_string())? {
        return Err(format!("tree {tree}: factored {back} not equivalent"));
    }
    Ok(())
}
