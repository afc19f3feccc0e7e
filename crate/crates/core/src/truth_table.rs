// SPDX-License-Identifier: Apache-2.0

//! Complete value tables of Boolean functions.
//!
//! Row `r` of an `n`-variable table holds `f(x1, ..., xn)` where `x_i` is bit
//! `i-1` of `r`; row 0 is the all-zeros input. The text form is
//! `tt:<n>:<hex>`, the table read as one integer (row 0 is its least
//! significant bit) and written in lowercase hex with `max(1, 2^n / 4)` digits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vars::{PartialAssignment, VarSet};
use crate::MAX_VARS;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_VARS {
        Err(Error::UnsupportedVarCount(n))
    } else {
        Ok(())
    }
}

impl TruthTable {
    /// Constant-zero table on `n` variables. `n = 0` is allowed for constants.
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(TruthTable {
            n,
            words: vec![0; word_count(n)],
        })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        let t = Self::zero(n)?;
        Ok(if value { !&t } else { t })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut t = Self::zero(n)?;
        for row in 0..t.len() {
            if f(row) {
                t.set(row, true);
            }
        }
        Ok(t)
    }

    /// The projection `x_var` as an `n`-variable table.
    pub fn var(n: usize, var: usize) -> Result<Self> {
        if var == 0 || var > n {
            return Err(Error::VariableOutOfRange { var, n });
        }
        Self::from_fn(n, |row| row >> (var - 1) & 1 == 1)
    }

    /// Builds a table from the low `2^n` bits of `bits` (`n <= 6`).
    pub fn from_u64(n: usize, bits: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::UnsupportedVarCount(n));
        }
        Ok(TruthTable {
            n,
            words: vec![bits & tail_mask(n)],
        })
    }

    /// The table as an integer, for `n <= 6`.
    pub fn as_u64(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.words[0])
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Number of rows, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, row: usize) -> bool {
        self.words[row >> 6] >> (row & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, value: bool) {
        let bit = 1u64 << (row & 63);
        if value {
            self.words[row >> 6] |= bit;
        } else {
            self.words[row >> 6] &= !bit;
        }
    }

    pub fn eval(&self, point: &[bool]) -> Result<bool> {
        if point.len() != self.n {
            return Err(Error::VarCountMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        let row = point
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | (usize::from(b) << i));
        Ok(self.get(row))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `Some(value)` if the table is constant.
    pub fn constant_value(&self) -> Option<bool> {
        let ones = self.count_ones();
        if ones == 0 {
            Some(false)
        } else if ones == self.len() {
            Some(true)
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Rows at which the two tables differ, as a table.
    pub fn difference_mask(&self, other: &TruthTable) -> TruthTable {
        self ^ other
    }

    /// Projection onto the free variables of `p`, re-indexed in ascending order.
    pub fn restrict(&self, p: &PartialAssignment) -> Result<TruthTable> {
        if p.num_vars() != self.n {
            p.bound().check_within(self.n)?;
        }
        let free = p.bound().complement(self.n);
        let base = p.ones().mask() as usize;
        let k = free.len();
        let free_vars = free.to_vec();
        let mut out = TruthTable::zero(k)?;
        for r in 0..1usize << k {
            let mut row = base;
            for (j, &v) in free_vars.iter().enumerate() {
                if r >> j & 1 == 1 {
                    row |= 1 << (v - 1);
                }
            }
            if self.get(row) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// True iff the function changes value when `x_var` is flipped in some row.
    pub fn depends_on(&self, var: usize) -> bool {
        if var == 0 || var > self.n {
            return false;
        }
        let i = var - 1;
        if i < 6 {
            let shift = 1u32 << i;
            let lo = LOW_HALF[i];
            self.words.iter().any(|&w| (w & lo) != ((w >> shift) & lo))
        } else {
            let stride = 1usize << (i - 6);
            self.words
                .chunks(2 * stride)
                .any(|c| c[..stride] != c[stride..])
        }
    }

    pub fn relevant_vars(&self) -> VarSet {
        (1..=self.n).filter(|&v| self.depends_on(v)).collect()
    }

    /// True iff every variable is relevant.
    pub fn depends_on_all(&self) -> bool {
        (1..=self.n).all(|v| self.depends_on(v))
    }

    pub fn first_irrelevant(&self) -> Option<usize> {
        (1..=self.n).find(|&v| !self.depends_on(v))
    }

    /// True iff the projection at `p` is constant.
    pub fn is_constant_subcube(&self, p: &PartialAssignment) -> Result<bool> {
        Ok(self.restrict(p)?.is_constant())
    }

    /// Re-expresses a table over the members of `vars` (ascending) as an
    /// `n`-variable table that ignores every other variable.
    pub fn embed(&self, n: usize, vars: VarSet) -> Result<TruthTable> {
        if vars.len() != self.n {
            return Err(Error::VarCountMismatch {
                expected: self.n,
                found: vars.len(),
            });
        }
        vars.check_within(n)?;
        TruthTable::from_fn(n, |row| self.get(vars.extract(row)))
    }

    /// Row-wise composition `outer(inner[0](x), ..., inner[m-1](x))`.
    pub fn compose(outer: &TruthTable, inner: &[TruthTable]) -> Result<TruthTable> {
        if inner.len() != outer.n {
            return Err(Error::VarCountMismatch {
                expected: outer.n,
                found: inner.len(),
            });
        }
        let n = inner.first().map_or(0, |t| t.n);
        if let Some(t) = inner.iter().find(|t| t.n != n) {
            return Err(Error::VarCountMismatch {
                expected: n,
                found: t.n,
            });
        }
        TruthTable::from_fn(n, |row| {
            let idx = inner
                .iter()
                .enumerate()
                .fold(0usize, |acc, (j, t)| acc | (usize::from(t.get(row)) << j));
            outer.get(idx)
        })
    }

    /// If `S` is a bound set, returns the inner function `h` of a decomposition
    /// `f = g(h(x_S), x_rest)`.
    ///
    /// `h` is the restriction of `f` to `S` at the smallest complement
    /// assignment where that restriction is non-constant. Every other
    /// restriction must be a constant, `h` or `!h`, and `h` must depend on all
    /// of `S`.
    pub fn is_bound_set(&self, s: VarSet) -> Result<Option<TruthTable>> {
        s.check_within(self.n)?;
        if s.len() <= 1 || s.len() >= self.n {
            return Err(Error::InvalidBoundSet {
                size: s.len(),
                n: self.n,
            });
        }
        Ok(self.bound_set_inner(s))
    }

    /// Same as [`TruthTable::is_bound_set`] without argument checks.
    pub(crate) fn bound_set_inner(&self, s: VarSet) -> Option<TruthTable> {
        let rest = s.complement(self.n);
        let mut h: Option<TruthTable> = None;
        for a in 0..1usize << rest.len() {
            let p = PartialAssignment::from_index(self.n, rest, a);
            let r = self.restrict(&p).expect("in range");
            if r.is_constant() {
                continue;
            }
            match &h {
                None => h = Some(r),
                Some(h) => {
                    if &r != h && r != !h {
                        return None;
                    }
                }
            }
        }
        h.filter(TruthTable::depends_on_all)
    }

    /// True iff no `S` with `1 < |S| < n` is a bound set.
    pub fn is_prime(&self) -> Result<bool> {
        if self.n < 3 {
            return Err(Error::PrimalityUndefined(self.n));
        }
        if let Some(v) = self.first_irrelevant() {
            return Err(Error::IrrelevantVariable(v));
        }
        Ok(self.is_prime_unchecked())
    }

    pub(crate) fn is_prime_unchecked(&self) -> bool {
        VarSet::full(self.n)
            .subsets()
            .filter(|s| s.len() > 1 && s.len() < self.n)
            .all(|s| self.bound_set_inner(s).is_none())
    }

    /// Applies a similarity witness: returns `g^σ(x_{π(1)}^{σ_1}, ...)` for `g = self`.
    pub fn transform(&self, w: &SimilarityWitness) -> Result<TruthTable> {
        if w.perm.len() != self.n {
            return Err(Error::VarCountMismatch {
                expected: self.n,
                found: w.perm.len(),
            });
        }
        let neg_mask = w
            .input_polarity
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &p)| acc | (usize::from(!p) << i));
        let out_neg = !w.output_polarity;
        TruthTable::from_fn(self.n, |row| {
            let mut arg = 0usize;
            for (i, &src) in w.perm.iter().enumerate() {
                arg |= (row >> src & 1) << i;
            }
            self.get(arg ^ neg_mask) ^ out_neg
        })
    }

    /// Searches all `n! * 2^n * 2` transforms for one mapping `other` onto `self`.
    pub fn similar(&self, other: &TruthTable) -> Result<Option<SimilarityWitness>> {
        if self.n != other.n {
            return Err(Error::VarCountMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let ones = self.count_ones();
        let g_ones = other.count_ones();
        if ones != g_ones && ones != self.len() - g_ones {
            return Ok(None);
        }
        let n = self.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let complement = !self;
        loop {
            for neg_mask in 0..1usize << n {
                let candidate = TruthTable::from_fn(n, |row| {
                    let mut arg = 0usize;
                    for (i, &src) in perm.iter().enumerate() {
                        arg |= (row >> src & 1) << i;
                    }
                    other.get(arg ^ neg_mask)
                })
                .expect("same n");
                let output_polarity = if candidate == *self {
                    true
                } else if candidate == complement {
                    false
                } else {
                    continue;
                };
                return Ok(Some(SimilarityWitness {
                    perm: perm.clone(),
                    input_polarity: (0..n).map(|i| neg_mask >> i & 1 == 0).collect(),
                    output_polarity,
                }));
            }
            if !next_permutation(&mut perm) {
                return Ok(None);
            }
        }
    }
}

/// Lexicographic successor; returns false after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Evidence that `f(x) = g^σ(x_{π(1)}^{σ_1}, ..., x_{π(n)}^{σ_n})`.
///
/// Polarities follow the convention `z^1 = z`, `z^0 = !z`: `true` means the
/// argument (or output) is taken as is. `perm[i]` is the 0-based index of the
/// variable of `f` feeding argument `i` of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimilarityWitness {
    pub perm: Vec<usize>,
    pub input_polarity: Vec<bool>,
    pub output_polarity: bool,
}

impl SimilarityWitness {
    pub fn identity(n: usize) -> Self {
        SimilarityWitness {
            perm: (0..n).collect(),
            input_polarity: vec![true; n],
            output_polarity: true,
        }
    }

    /// Witness of the reverse direction: if `f = self(g)`, then `g = inverse(f)`.
    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut inv = vec![0; n];
        for (i, &src) in self.perm.iter().enumerate() {
            inv[src] = i;
        }
        SimilarityWitness {
            input_polarity: inv.iter().map(|&i| self.input_polarity[i]).collect(),
            perm: inv,
            output_polarity: self.output_polarity,
        }
    }
}

impl Not for &TruthTable {
    type Output = TruthTable;

    fn not(self) -> TruthTable {
        let mask = tail_mask(self.n);
        TruthTable {
            n: self.n,
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }
}

impl Not for TruthTable {
    type Output = TruthTable;

    fn not(self) -> TruthTable {
        !&self
    }
}

macro_rules! bitwise {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &TruthTable {
            type Output = TruthTable;

            /// Panics if the variable counts differ.
            fn $method(self, rhs: &TruthTable) -> TruthTable {
                assert_eq!(self.n, rhs.n, "truth tables over different variable counts");
                TruthTable {
                    n: self.n,
                    words: self
                        .words
                        .iter()
                        .zip(&rhs.words)
                        .map(|(a, b)| a $op b)
                        .collect(),
                }
            }
        }
    };
}

bitwise!(BitAnd, bitand, &);
bitwise!(BitOr, bitor, |);
bitwise!(BitXor, bitxor, ^);

impl Ord for TruthTable {
    /// Orders by variable count, then by the table read as an integer; for
    /// equal `n` this is the lexicographic order of the `tt:` text form.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for TruthTable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tt:{}:", self.n)?;
        if self.n <= 6 {
            let digits = ((1usize << self.n) / 4).max(1);
            write!(f, "{:0width$x}", self.words[0], width = digits)
        } else {
            for w in self.words.iter().rev() {
                write!(f, "{w:016x}")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TruthTable {
    /// Parses the hex body of a table on `n` variables (no `tt:` prefix).
    pub fn from_hex(n: usize, hex: &str) -> Result<TruthTable> {
        let bad = |message: String| Error::Parse {
            token: hex.to_string(),
            position: 0,
            message,
        };
        check_n(n)?;
        let digits = ((1usize << n) / 4).max(1);
        if hex.len() != digits {
            return Err(bad(format!(
                "expected {digits} hex digits for {n} variables, found {}",
                hex.len()
            )));
        }
        let mut t = TruthTable::zero(n)?;
        for (k, c) in hex.chars().rev().enumerate() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| bad(format!("invalid hex digit `{c}`")))? as u64;
            let base = 4 * k;
            for b in 0..4 {
                if d >> b & 1 == 1 {
                    let row = base + b;
                    if row >= t.len() {
                        return Err(bad(format!("value exceeds {} rows", t.len())));
                    }
                    t.set(row, true);
                }
            }
        }
        Ok(t)
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |message: &str| Error::Parse {
            token: s.to_string(),
            position: 0,
            message: message.to_string(),
        };
        let body = s
            .strip_prefix("tt:")
            .ok_or_else(|| bad("expected `tt:<n>:<hex>`"))?;
        let (n, hex) = body
            .split_once(':')
            .ok_or_else(|| bad("expected `tt:<n>:<hex>`"))?;
        let n: usize = n.parse().map_err(|_| bad("invalid variable count"))?;
        TruthTable::from_hex(n, &hex.to_ascii_lowercase())
    }
}
