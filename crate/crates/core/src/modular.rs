//! Reductions of integer sets modulo `n` and sum/difference arithmetic in
//! `Z/nZ`.
//!
//! A normalized set `A` with maximum `m` is *reducible* modulo `n` when it is
//! the full lift of `A' = A ∩ [0, n)` over `[0, m]`. For such sets, gluing a
//! translate `A + n` onto `A` changes `|A+A| - |A-A|` by exactly twice the
//! cyclic surplus `|A'+A'| - |A'-A'|`; [`replicate`] applies that step
//! repeatedly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{MstdError, Result};
use crate::sets::IntSet;

/// Largest modulus accepted for cyclic arithmetic.
pub const MAX_MODULUS: u64 = 1 << 20;

/// A non-empty subset of `Z/nZ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CyclicRepr", into = "CyclicRepr")]
pub struct CyclicSet {
    modulus: u64,
    residues: Vec<u64>,
    bits: Bits,
}

#[derive(Serialize, Deserialize)]
struct CyclicRepr {
    modulus: u64,
    residues: Vec<u64>,
}

impl TryFrom<CyclicRepr> for CyclicSet {
    type Error = MstdError;

    fn try_from(r: CyclicRepr) -> Result<Self> {
        CyclicSet::new(r.modulus, r.residues)
    }
}

impl From<CyclicSet> for CyclicRepr {
    fn from(c: CyclicSet) -> Self {
        CyclicRepr {
            modulus: c.modulus,
            residues: c.residues,
        }
    }
}

impl CyclicSet {
    /// Residues must lie in `[0, modulus)` and be distinct.
    pub fn new(modulus: u64, mut residues: Vec<u64>) -> Result<Self> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(MstdError::Domain(format!(
                "modulus must be in [1, {MAX_MODULUS}], got {modulus}"
            )));
        }
        residues.sort_unstable();
        if let Some(w) = residues.windows(2).find(|w| w[0] == w[1]) {
            return Err(MstdError::Duplicate(w[0]));
        }
        if residues.is_empty() {
            return Err(MstdError::EmptySet);
        }
        if let Some(&r) = residues.iter().find(|&&r| r >= modulus) {
            return Err(MstdError::Domain(format!(
                "residue {r} is not below {modulus}"
            )));
        }
        let bits = Bits::from_indices(modulus as usize, residues.iter().map(|&r| r as usize));
        Ok(CyclicSet {
            modulus,
            residues,
            bits,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, r: u64) -> bool {
        self.bits.get((r % self.modulus) as usize)
    }

    /// `S + S` in `Z/nZ`.
    pub fn sumset(&self) -> CyclicSet {
        let mut acc = Bits::new(self.modulus as usize);
        for &r in &self.residues {
            acc.or_assign(&self.bits.rotated_left(r as usize));
        }
        self.with_bits(acc)
    }

    /// `S - S` in `Z/nZ`.
    pub fn diffset(&self) -> CyclicSet {
        let n = self.modulus as usize;
        let mut acc = Bits::new(n);
        for &r in &self.residues {
            acc.or_assign(&self.bits.rotated_left((n - r as usize) % n));
        }
        self.with_bits(acc)
    }

    fn with_bits(&self, bits: Bits) -> CyclicSet {
        let residues = bits.ones().map(|i| i as u64).collect();
        CyclicSet {
            modulus: self.modulus,
            residues,
            bits,
        }
    }
}

/// `(|S+S|, |S-S|)` in `Z/nZ`.
pub fn cyclic_profile(s: &CyclicSet) -> (usize, usize) {
    (s.sumset().len(), s.diffset().len())
}

/// `A ∩ [0, n)` viewed in `Z/nZ`.
pub fn reduce_mod(a: &IntSet, n: u64) -> Result<CyclicSet> {
    a.require_normalized()?;
    CyclicSet::new(n, a.iter().take_while(|&x| x < n).collect())
}

/// Whether `A = {x in [0, max A] : x mod n in A'}`.
pub fn is_reducible(a: &IntSet, n: u64) -> Result<bool> {
    let reduction = reduce_mod(a, n)?;
    Ok(lift_matches(a, &reduction))
}

fn lift_matches(a: &IntSet, reduction: &CyclicSet) -> bool {
    let n = reduction.modulus();
    (0..=a.max()).all(|x| a.contains(x) == reduction.contains(x % n))
}

/// Reducibility and cyclic statistics of `A` modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    #[serde(rename = "n")]
    pub modulus: u64,
    pub reducible: bool,
    #[serde(rename = "sum")]
    pub cyclic_sum_size: usize,
    #[serde(rename = "diff")]
    pub cyclic_diff_size: usize,
    /// `|A'+A'| - |A'-A'|`, present only when `A` is reducible.
    pub f_mod: Option<i64>,
    #[serde(rename = "good")]
    pub good_mstd: bool,
    pub reduction: CyclicSet,
}

pub fn reduction_report(a: &IntSet, n: u64) -> Result<ReductionReport> {
    let reduction = reduce_mod(a, n)?;
    let reducible = lift_matches(a, &reduction);
    let (sum, diff) = cyclic_profile(&reduction);
    let f_mod = reducible.then_some(sum as i64 - diff as i64);
    Ok(ReductionReport {
        modulus: n,
        reducible,
        cyclic_sum_size: sum,
        cyclic_diff_size: diff,
        f_mod,
        good_mstd: f_mod.is_some_and(|f| f > 0),
        reduction,
    })
}

/// `A ∪ (A+n) ∪ ... ∪ (A+(t-1)n)`, built by `t - 1` gluing steps, each
/// checked for reducibility first.
pub fn replicate(a: &IntSet, n: u64, t: u32) -> Result<IntSet> {
    if t == 0 {
        return Err(MstdError::Domain(
            "replication count must be at least 1".into(),
        ));
    }
    let mut cur = a.clone();
    for _ in 1..t {
        if !is_reducible(&cur, n)? {
            return Err(MstdError::NotReducible(n));
        }
        let shifted = cur.translate(
            i64::try_from(n).map_err(|_| MstdError::Overflow("translating by n".into()))?,
        )?;
        cur = cur.union(&shifted)?;
    }
    Ok(cur)
}

/// Reports for every modulus in `[1, n_max]` (default `2 max(A) + 1`) at which
/// `A` is reducible with positive cyclic surplus, in increasing order of `n`.
pub fn good_reduction_search(a: &IntSet, n_max: Option<u64>) -> Result<Vec<ReductionReport>> {
    a.require_normalized()?;
    let n_max = n_max.unwrap_or(2 * a.max() + 1).min(MAX_MODULUS);
    let mut out: Vec<ReductionReport> = (1..=n_max)
        .into_par_iter()
        .filter_map(|n| {
            // Reducibility is cheap; only pay for the cyclic convolutions when it holds.
            let reduction = reduce_mod(a, n).ok()?;
            if !lift_matches(a, &reduction) {
                return None;
            }
            let report = reduction_report(a, n).ok()?;
            report.good_mstd.then_some(report)
        })
        .collect();
    out.sort_by_key(|r| r.modulus);
    Ok(out)
}
