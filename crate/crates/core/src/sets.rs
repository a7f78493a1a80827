//! Finite sets of non-negative integers and their sum/difference arithmetic.
//!
//! An [`IntSet`] keeps its sorted elements together with a dense bitset of the
//! translated set `A - min(A)`. Sumsets and difference sets are computed with
//! shift-OR kernels over that bitset, so the cost is `|A| * diameter / 64`
//! word operations.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{MstdError, Result};

/// Largest diameter accepted for the dense representation.
pub const MAX_DIAMETER: u64 = 1 << 30;

/// Largest element accepted; doubling it must stay inside `i64`.
pub const MAX_ELEMENT: u64 = (i64::MAX as u64) / 2;

/// A non-empty finite set of non-negative integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct IntSet {
    elems: Vec<u64>,
    bits: Bits,
}

impl IntSet {
    /// Builds a set from arbitrary-order elements; duplicates are rejected.
    pub fn new(mut elems: Vec<u64>) -> Result<Self> {
        elems.sort_unstable();
        if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
            return Err(MstdError::Duplicate(w[0]));
        }
        Self::from_sorted(elems)
    }

    /// Builds a set from elements that may repeat (set union semantics).
    pub fn collect<I: IntoIterator<Item = u64>>(iter: I) -> Result<Self> {
        let mut elems: Vec<u64> = iter.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        Self::from_sorted(elems)
    }

    /// The integer interval `[lo, hi]`.
    pub fn interval(lo: u64, hi: u64) -> Result<Self> {
        if lo > hi {
            return Err(MstdError::EmptySet);
        }
        Self::from_sorted((lo..=hi).collect())
    }

    fn from_sorted(elems: Vec<u64>) -> Result<Self> {
        let (&min, &max) = match (elems.first(), elems.last()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(MstdError::EmptySet),
        };
        if max > MAX_ELEMENT {
            return Err(MstdError::ElementTooLarge(max));
        }
        let diameter = max - min;
        if diameter > MAX_DIAMETER {
            return Err(MstdError::DiameterTooLarge(diameter));
        }
        let bits = Bits::from_indices(
            diameter as usize + 1,
            elems.iter().map(|&a| (a - min) as usize),
        );
        Ok(IntSet { elems, bits })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elems.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> u64 {
        self.elems[0]
    }

    pub fn max(&self) -> u64 {
        self.elems[self.elems.len() - 1]
    }

    pub fn diameter(&self) -> u64 {
        self.max() - self.min()
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.min() && self.bits.get((x - self.min()) as usize)
    }

    /// Bitset of `A - min(A)` over `[0, diameter]`.
    pub(crate) fn offset_bits(&self) -> &Bits {
        &self.bits
    }

    /// `A + v`; fails if an element would become negative.
    pub fn translate(&self, v: i64) -> Result<Self> {
        let moved = self
            .iter()
            .map(|a| {
                a.checked_add_signed(v)
                    .ok_or_else(|| MstdError::Overflow(format!("translating by {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_sorted(moved)
    }

    /// `u * A` for a positive dilation factor.
    pub fn dilate(&self, u: u64) -> Result<Self> {
        if u == 0 {
            return Err(MstdError::Domain("dilation factor must be positive".into()));
        }
        let scaled = self
            .iter()
            .map(|a| {
                a.checked_mul(u)
                    .ok_or_else(|| MstdError::Overflow(format!("dilating by {u}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_sorted(scaled)
    }

    /// `x - A`; requires `x >= max(A)`.
    pub fn reflect_about(&self, x: u64) -> Result<Self> {
        if x < self.max() {
            return Err(MstdError::Domain(format!(
                "reflection point {x} is below max {}",
                self.max()
            )));
        }
        Self::from_sorted(self.elems.iter().rev().map(|&a| x - a).collect())
    }

    /// `max(A) - A`.
    pub fn reflect(&self) -> Self {
        self.reflect_about(self.max())
            .expect("max is a valid reflection point")
    }

    pub fn union(&self, other: &IntSet) -> Result<Self> {
        Self::collect(self.iter().chain(other.iter()))
    }

    /// `A \ B`; fails if nothing is left.
    pub fn without(&self, other: &IntSet) -> Result<Self> {
        Self::from_sorted(self.iter().filter(|&a| !other.contains(a)).collect())
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.iter().all(|a| other.contains(a))
    }

    pub fn is_disjoint(&self, other: &IntSet) -> bool {
        self.iter().all(|a| !other.contains(a))
    }

    /// gcd of `A - min(A)`; 0 for singletons.
    pub fn offset_gcd(&self) -> u64 {
        let m = self.min();
        self.iter().fold(0, |g, a| g.gcd(&(a - m)))
    }

    pub fn is_normalized(&self) -> bool {
        self.min() == 0 && (self.len() == 1 || self.offset_gcd() == 1)
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(MstdError::NotNormalized(self.to_string()))
        }
    }
}

impl TryFrom<Vec<u64>> for IntSet {
    type Error = MstdError;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        IntSet::new(v)
    }
}

impl From<IntSet> for Vec<u64> {
    fn from(s: IntSet) -> Vec<u64> {
        s.elems
    }
}

impl FromStr for IntSet {
    type Err = MstdError;

    /// Parses a comma-separated list of decimal integers, e.g. `0,2,3,4,7`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(s);
        if s.trim().is_empty() {
            return Err(MstdError::EmptySet);
        }
        let elems = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u64>()
                    .map_err(|_| MstdError::Parse(format!("`{tok}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntSet::new(elems)
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntSet{self}")
    }
}

/// The difference set `A - A`, stored as its non-negative half.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffSet {
    nonneg: IntSet,
}

impl DiffSet {
    /// `{a - b : a >= b}`; always contains 0.
    pub fn nonneg(&self) -> &IntSet {
        &self.nonneg
    }

    /// `|A - A| = 2 * |nonneg| - 1`.
    pub fn size(&self) -> usize {
        2 * self.nonneg.len() - 1
    }

    pub fn contains(&self, x: i64) -> bool {
        self.nonneg.contains(x.unsigned_abs())
    }

    /// All elements in increasing order.
    pub fn to_vec(&self) -> Vec<i64> {
        let pos = self.nonneg.iter().map(|d| d as i64);
        let neg = self.nonneg.elements()[1..]
            .iter()
            .rev()
            .map(|&d| -(d as i64));
        neg.chain(pos).collect()
    }
}

/// `A + A`.
pub fn sumset(a: &IntSet) -> IntSet {
    let src = a.offset_bits();
    let mut acc = Bits::new(2 * src.len() - 1);
    for r in src.ones() {
        acc.or_shifted_left(src, r);
    }
    let base = 2 * a.min();
    IntSet::from_sorted(acc.ones().map(|i| base + i as u64).collect())
        .expect("sumset of a valid set is valid")
}

/// `A - A`.
pub fn diffset(a: &IntSet) -> DiffSet {
    let src = a.offset_bits();
    let mut acc = Bits::new(src.len());
    for r in src.ones() {
        acc.or_shifted_right(src, r);
    }
    let nonneg = IntSet::from_sorted(acc.ones().map(|i| i as u64).collect())
        .expect("difference set always contains 0");
    DiffSet { nonneg }
}

/// Ordered representation counts `r(c) = #{(a, b) in A x A : a + b = c}` for
/// `c` in `[2 min, 2 max]`, indexed by `c - 2 min`.
pub fn representation_counts(a: &IntSet) -> Vec<u32> {
    let m = a.min();
    let mut counts = vec![0u32; 2 * a.diameter() as usize + 1];
    for x in a.iter() {
        for y in a.iter() {
            counts[(x + y - 2 * m) as usize] += 1;
        }
    }
    counts
}

/// `(A - min A) / g` with `g` the gcd of the translated elements.
pub fn normalize(a: &IntSet) -> IntSet {
    let m = a.min();
    let g = a.offset_gcd().max(1);
    IntSet::from_sorted(a.iter().map(|x| (x - m) / g).collect()).expect("normalized set is valid")
}

/// Representative of the affine class of `A`: the lexicographically smaller of
/// `normalize(A)` and `normalize(max A - A)`.
pub fn canonical_form(a: &IntSet) -> IntSet {
    let n = normalize(a);
    let r = n.reflect();
    if r.elements() < n.elements() {
        r
    } else {
        n
    }
}

/// Exact sum/difference statistics of one set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumDiffProfile {
    pub set_size: usize,
    pub sum_size: usize,
    pub diff_size: usize,
    pub delta: i64,
    /// `ln|A+A| / ln|A-A|`, absent for singletons.
    pub f_ratio: Option<f64>,
    pub is_mstd: bool,
    /// Integers in `[2 min, 2 max]` missing from `A + A`.
    pub missing_sums: Vec<u64>,
    /// Integers in `[0, diameter]` missing from `A - A`.
    pub missing_diffs: Vec<u64>,
}

pub fn profile(a: &IntSet) -> SumDiffProfile {
    let sums = sumset(a);
    let diffs = diffset(a);
    let lo = 2 * a.min();
    let missing_sums = (lo..=2 * a.max()).filter(|&x| !sums.contains(x)).collect();
    let missing_diffs = (0..=a.diameter())
        .filter(|&d| !diffs.nonneg().contains(d))
        .collect();
    let sum_size = sums.len();
    let diff_size = diffs.size();
    let f_ratio = (a.len() >= 2).then(|| (sum_size as f64).ln() / (diff_size as f64).ln());
    SumDiffProfile {
        set_size: a.len(),
        sum_size,
        diff_size,
        delta: sum_size as i64 - diff_size as i64,
        f_ratio,
        is_mstd: sum_size > diff_size,
        missing_sums,
        missing_diffs,
    }
}

/// Symmetric structure of a set: global symmetry and a maximal symmetric subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub is_symmetric: bool,
    /// `x` with `A = x - A`, when it exists.
    pub center_doubled: Option<u64>,
    /// `s(A)`, the size of a largest symmetric subset.
    pub s_value: usize,
    pub witness_center: u64,
    pub witness_subset: IntSet,
}

/// Every symmetric subset with doubled center `c` lies inside `A ∩ (c - A)`,
/// whose size is the representation count `r(c)`; so `s(A) = max_c r(c)`.
pub fn symmetry_report(a: &IntSet) -> SymmetryReport {
    let counts = representation_counts(a);
    let (best_idx, &best) = counts
        .iter()
        .enumerate()
        .rev()
        .max_by_key(|&(_, c)| c)
        .expect("non-empty counts");
    // `max_by_key` keeps the last maximum; iterating in reverse makes that the smallest index.
    let c = 2 * a.min() + best_idx as u64;
    let witness_subset =
        IntSet::from_sorted(a.iter().filter(|&x| x <= c && a.contains(c - x)).collect())
            .expect("witness contains at least one element");
    let s_value = best as usize;
    debug_assert_eq!(s_value, witness_subset.len());
    let is_symmetric = s_value == a.len();
    SymmetryReport {
        is_symmetric,
        center_doubled: is_symmetric.then(|| a.min() + a.max()),
        s_value,
        witness_center: c,
        witness_subset,
    }
}
