// SPDX-License-Identifier: Apache-2.0

//! Relevance hypercubes.
//!
//! A relevance hypercube for a variable set `w` is a fixing of every variable
//! outside `w` under which the projection depends on all of `w`. Fixings are
//! always enumerated in ascending order of the assignment to the bound
//! variables (smallest bound variable is the least significant bit).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::par;
use crate::truth_table::TruthTable;
use crate::vars::{PartialAssignment, VarSet};

/// A subcube given by the assignment that fixes its non-free variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hypercube {
    fix: PartialAssignment,
}

impl Hypercube {
    /// The subcube whose free variables are those left unbound by `fix`.
    pub fn new(fix: PartialAssignment) -> Self {
        Hypercube { fix }
    }

    /// The whole cube of an `n`-variable function.
    pub fn full(n: usize) -> Self {
        Hypercube {
            fix: PartialAssignment::empty(n),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.fix.num_vars()
    }

    pub fn free(&self) -> VarSet {
        self.fix.free()
    }

    pub fn fix(&self) -> &PartialAssignment {
        &self.fix
    }

    pub fn dim(&self) -> usize {
        self.free().len()
    }

    /// Row indices of the cube's points, in ascending order of the free-variable
    /// assignment.
    pub fn rows(&self) -> impl Iterator<Item = usize> + '_ {
        let base = self.fix.ones().mask() as usize;
        let free = self.free();
        (0..1usize << free.len()).map(move |i| base | free.deposit(i))
    }

    /// True when `self` is a subcube of `other`.
    pub fn is_subcube_of(&self, other: &Hypercube) -> bool {
        self.fix.extends(&other.fix)
    }

    /// True when the projection of `tt` onto this cube depends on every free variable.
    pub fn is_relevance_hypercube(&self, tt: &TruthTable) -> bool {
        self.num_vars() == tt.num_vars()
            && tt
                .restrict(&self.fix)
                .map(|r| r.depends_on_all())
                .unwrap_or(false)
    }
}

impl fmt::Display for Hypercube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hc:{{free={}; fix={}}}", self.free(), self.fix)
    }
}

impl fmt::Debug for Hypercube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Hypercube {
    type Err = Error;

    /// Parses `hc:{free=1,2; fix=3=0,4=1}`. The variable count is the number
    /// of free plus fixed variables, which must together be `1..n`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |message: &str| Error::Parse {
            token: s.to_string(),
            position: 0,
            message: message.to_string(),
        };
        let body = s
            .strip_prefix("hc:{")
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| bad("expected `hc:{free=...; fix=...}`"))?;
        let (free, fix) = body
            .split_once(';')
            .ok_or_else(|| bad("missing `;` between free and fix"))?;
        let free: VarSet = free
            .trim()
            .strip_prefix("free=")
            .ok_or_else(|| bad("missing `free=`"))?
            .parse()?;
        let fix = fix
            .trim()
            .strip_prefix("fix=")
            .ok_or_else(|| bad("missing `fix=`"))?;
        let bound_count = if fix.trim().is_empty() {
            0
        } else {
            fix.split(',').count()
        };
        let n = free.len() + bound_count;
        let fix = PartialAssignment::parse(n, fix)?;
        if !fix.bound().is_disjoint(free) || fix.bound().union(free) != VarSet::full(n) {
            return Err(bad("free and fixed variables must partition 1..n"));
        }
        Ok(Hypercube { fix })
    }
}

/// Every relevance hypercube for `w`, in ascending fixing order.
pub fn find_hypercubes(tt: &TruthTable, w: VarSet) -> Result<Vec<Hypercube>> {
    let n = tt.num_vars();
    w.check_within(n)?;
    let bound = w.complement(n);
    let hits = par::map_range(1usize << bound.len(), |a| {
        let cube = Hypercube::new(PartialAssignment::from_index(n, bound, a));
        cube.is_relevance_hypercube(tt).then_some(cube)
    });
    Ok(hits.into_iter().flatten().collect())
}

/// First relevance hypercube for `w` in ascending fixing order.
pub fn find_one_hypercube(tt: &TruthTable, w: VarSet) -> Result<Option<Hypercube>> {
    let n = tt.num_vars();
    w.check_within(n)?;
    let bound = w.complement(n);
    let cube = |a| Hypercube::new(PartialAssignment::from_index(n, bound, a));
    Ok(par::find_first_index(1usize << bound.len(), |a| {
        cube(a).is_relevance_hypercube(tt)
    })
    .map(cube))
}

/// The projection of `tt` onto `h`; fails unless it depends on every free variable.
pub fn restriction_on(tt: &TruthTable, h: &Hypercube) -> Result<TruthTable> {
    if h.num_vars() != tt.num_vars() {
        return Err(Error::VarCountMismatch {
            expected: tt.num_vars(),
            found: h.num_vars(),
        });
    }
    let r = tt.restrict(h.fix())?;
    if !r.depends_on_all() {
        return Err(Error::InvalidHypercube(format!(
            "{h} does not witness the relevance of all its free variables"
        )));
    }
    Ok(r)
}

/// Grows `h` to a relevance hypercube of dimension `q` whose free set contains
/// that of `h`.
///
/// Each step frees one more variable and searches all re-fixings of the
/// remaining bound variables; the first (variable, fixing) pair in ascending
/// order wins. Such a step exists for every function, so a failure signals a
/// defect (or a request beyond the relevant variables).
pub fn expand_hypercube(tt: &TruthTable, h: &Hypercube, q: usize) -> Result<Hypercube> {
    let n = tt.num_vars();
    restriction_on(tt, h)?;
    if q < h.dim() || q > n {
        return Err(Error::InvalidDimension { q, dim: h.dim(), n });
    }
    let mut cur = *h;
    while cur.dim() < q {
        let free = cur.free();
        let mut next = None;
        for v in free.complement(n).iter() {
            if let Some(c) = find_one_hypercube(tt, free.with(v))? {
                next = Some(c);
                break;
            }
        }
        cur = next.ok_or(Error::ExpansionFailed(cur.dim()))?;
    }
    Ok(cur)
}

/// A superset `w` of `u` and a relevance hypercube for `w` that contains no
/// relevance hypercube for `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityViolation {
    pub w: VarSet,
    pub cube: Hypercube,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable(StabilityViolation),
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable)
    }
}

/// Checks by brute force that for every `w` with `u ⊆ w ⊆ x` (`x` the relevant
/// variables) and every relevance hypercube `H` for `w` there is a relevance
/// hypercube for `u` inside `H`. The case `w = x` also demands that some
/// hypercube for `u` exists at all.
pub fn is_stable(tt: &TruthTable, u: VarSet) -> Result<Stability> {
    let mut first = None;
    scan_stability(tt, u, |v| {
        first = Some(v);
        false
    })?;
    Ok(first.map_or(Stability::Stable, Stability::Unstable))
}

/// Every `(w, H)` violating stability of `u`, ordered by `w` (ascending mask of
/// `w \ u`) and then by fixing.
pub fn stability_violations(tt: &TruthTable, u: VarSet) -> Result<Vec<StabilityViolation>> {
    let mut all = Vec::new();
    scan_stability(tt, u, |v| {
        all.push(v);
        true
    })?;
    Ok(all)
}

fn scan_stability(
    tt: &TruthTable,
    u: VarSet,
    mut on_violation: impl FnMut(StabilityViolation) -> bool,
) -> Result<()> {
    let n = tt.num_vars();
    u.check_within(n)?;
    let x = tt.relevant_vars();
    if let Some(v) = u.difference(x).first() {
        return Err(Error::IrrelevantVariable(v));
    }
    for extra in x.difference(u).subsets() {
        let w = u.union(extra);
        let cubes = find_hypercubes(tt, w)?;
        let bad = par::map_slice(&cubes, |cube| !contains_cube_for(tt, cube, extra));
        for (cube, bad) in cubes.into_iter().zip(bad) {
            if bad && !on_violation(StabilityViolation { w, cube }) {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Whether some re-fixing of `extra` inside `cube` is a relevance hypercube
/// for the remaining free variables.
fn contains_cube_for(tt: &TruthTable, cube: &Hypercube, extra: VarSet) -> bool {
    let n = tt.num_vars();
    (0..1usize << extra.len()).any(|a| {
        let inner = PartialAssignment::from_index(n, extra, a);
        let fix = cube.fix().merge(&inner).expect("disjoint bindings");
        Hypercube::new(fix).is_relevance_hypercube(tt)
    })
}
