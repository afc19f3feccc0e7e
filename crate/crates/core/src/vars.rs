// SPDX-License-Identifier: Apache-2.0

//! Variable sets and partial assignments.
//!
//! Variables are 1-based throughout the crate: `x1` is variable `1` and
//! supplies bit 0 of a truth-table row index.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::MAX_VARS;

/// A set of 1-based variable indices, stored as a bit mask (`x_i` is bit `i-1`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u32);

impl VarSet {
    pub const fn empty() -> Self {
        VarSet(0)
    }

    /// `{1..n}`.
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            VarSet(u32::MAX)
        } else {
            VarSet((1u32 << n) - 1)
        }
    }

    pub const fn from_mask(mask: u32) -> Self {
        VarSet(mask)
    }

    pub const fn singleton(var: usize) -> Self {
        VarSet(1 << (var - 1))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, var: usize) -> bool {
        (1..=32).contains(&var) && self.0 & (1 << (var - 1)) != 0
    }

    pub fn insert(&mut self, var: usize) {
        self.0 |= 1 << (var - 1);
    }

    pub fn remove(&mut self, var: usize) {
        self.0 &= !(1 << (var - 1));
    }

    pub fn with(mut self, var: usize) -> Self {
        self.insert(var);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VarSet) -> bool {
        self.0 & other.0 == 0
    }

    /// `{1..n} \ self`.
    pub fn complement(self, n: usize) -> VarSet {
        VarSet::full(n).difference(self)
    }

    /// Largest member, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> + Clone {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i as usize + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Fails if some member exceeds `n`.
    pub fn check_within(self, n: usize) -> Result<()> {
        match self.last() {
            Some(var) if var > n => Err(Error::VariableOutOfRange { var, n }),
            _ => Ok(()),
        }
    }

    /// All subsets of `self`, in ascending mask order (the empty set first).
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        // Standard submask enumeration, reversed into ascending order.
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(VarSet(cur))
        })
    }

    /// Spreads the low `self.len()` bits of `index` onto the members of `self`,
    /// smallest member first, producing a row mask.
    pub fn deposit(self, index: usize) -> usize {
        let mut out = 0usize;
        for (j, var) in self.iter().enumerate() {
            if index >> j & 1 == 1 {
                out |= 1 << (var - 1);
            }
        }
        out
    }

    /// Inverse of [`VarSet::deposit`]: gathers the bits of `row` at the members of `self`.
    pub fn extract(self, row: usize) -> usize {
        let mut out = 0usize;
        for (j, var) in self.iter().enumerate() {
            if row >> (var - 1) & 1 == 1 {
                out |= 1 << j;
            }
        }
        out
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VarSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for VarSet {
    type Err = Error;

    /// Parses `1,2,5` (an optional `x` prefix per member is accepted).
    fn from_str(s: &str) -> Result<Self> {
        let mut set = VarSet::empty();
        let mut offset = 0;
        for part in s.split(',') {
            let token = part.trim();
            let digits = token.strip_prefix('x').unwrap_or(token);
            if token.is_empty() && s.trim().is_empty() {
                break;
            }
            let var: usize = digits.parse().map_err(|_| Error::Parse {
                token: token.to_string(),
                position: offset,
                message: "expected a variable index".into(),
            })?;
            if var == 0 || var > MAX_VARS {
                return Err(Error::VariableOutOfRange { var, n: MAX_VARS });
            }
            if set.contains(var) {
                return Err(Error::Parse {
                    token: token.to_string(),
                    position: offset,
                    message: "repeated variable".into(),
                });
            }
            set.insert(var);
            offset += part.len() + 1;
        }
        Ok(set)
    }
}

/// A fixing of some variables of an `n`-variable function to constants.
///
/// A hypercube is identified with the assignment binding its non-free variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    n: usize,
    bound: VarSet,
    ones: VarSet,
}

impl PartialAssignment {
    /// Binds nothing.
    pub fn empty(n: usize) -> Self {
        PartialAssignment {
            n,
            bound: VarSet::empty(),
            ones: VarSet::empty(),
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, bool)]) -> Result<Self> {
        let mut p = PartialAssignment::empty(n);
        for &(var, value) in pairs {
            p.bind(var, value)?;
        }
        Ok(p)
    }

    /// Binds the variables of `bound` to the bits of `index` (smallest variable
    /// takes bit 0). This is the enumeration order used for fixings.
    pub fn from_index(n: usize, bound: VarSet, index: usize) -> Self {
        PartialAssignment {
            n,
            bound,
            ones: VarSet::from_mask(bound.deposit(index) as u32),
        }
    }

    pub fn bind(&mut self, var: usize, value: bool) -> Result<()> {
        if var == 0 || var > self.n {
            return Err(Error::VariableOutOfRange { var, n: self.n });
        }
        if self.bound.contains(var) {
            return Err(Error::DuplicateBinding(var));
        }
        self.bound.insert(var);
        if value {
            self.ones.insert(var);
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> VarSet {
        self.bound
    }

    pub fn free(&self) -> VarSet {
        self.bound.complement(self.n)
    }

    /// Bound variables set to 1.
    pub fn ones(&self) -> VarSet {
        self.ones
    }

    pub fn value(&self, var: usize) -> Option<bool> {
        self.bound.contains(var).then(|| self.ones.contains(var))
    }

    /// Position of this fixing in the ascending enumeration of assignments to
    /// its bound variables.
    pub fn index(&self) -> usize {
        self.bound.extract(self.ones.mask() as usize)
    }

    /// True when every binding of `other` is also a binding of `self`.
    pub fn extends(&self, other: &PartialAssignment) -> bool {
        other.bound.is_subset(self.bound) && self.ones.intersection(other.bound) == other.ones
    }

    /// Union of two assignments over disjoint variable sets.
    pub fn merge(&self, other: &PartialAssignment) -> Result<PartialAssignment> {
        if self.n != other.n {
            return Err(Error::VarCountMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if let Some(var) = self.bound.intersection(other.bound).first() {
            return Err(Error::DuplicateBinding(var));
        }
        Ok(PartialAssignment {
            n: self.n,
            bound: self.bound.union(other.bound),
            ones: self.ones.union(other.ones),
        })
    }

    /// Parses `3=0,4=1` for an `n`-variable function; the empty string binds nothing.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut p = PartialAssignment::empty(n);
        let s = s.trim();
        if s.is_empty() {
            return Ok(p);
        }
        for part in s.split(',') {
            let token = part.trim();
            let bad = || Error::Parse {
                token: token.to_string(),
                position: 0,
                message: "expected <var>=<0|1>".into(),
            };
            let (var, val) = token.split_once('=').ok_or_else(bad)?;
            let var = var.trim();
            let var: usize = var
                .strip_prefix('x')
                .unwrap_or(var)
                .parse()
                .map_err(|_| bad())?;
            let value = match val.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(bad()),
            };
            p.bind(var, value)?;
        }
        Ok(p)
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.bound.iter() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{v}={}", u8::from(self.ones.contains(v)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialAssignment(n={}; {self})", self.n)
    }
}
