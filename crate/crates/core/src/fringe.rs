//! Subsets of `[0, n]` with prescribed sum and difference deficiencies.
//!
//! A target `(j, k)` asks for `A ⊆ [0, n]` with `|A+A| = (2n+1) - j` and
//! `|A-A| = (2n+1) - 2k`. The sets are assembled as `L ⊔ R ⊔ (n - U)`: a
//! fixed lower fringe `L`, a fixed upper fringe given by offsets `U`, and a
//! middle `R` that is either the whole open interval or a random subset of it.
//!
//! Two fringe families are provided:
//!
//! * **Low** (`j <= k`, `k >= 1`): `k` glued copies of the 11-element block
//!   `{0,1,2,4,5,9,12,13,14,16,17}` with period 12, which misses one
//!   difference class per copy; dropping `j` elements of the form `12t + 1`
//!   opens `j` sum holes without changing the differences.
//! * **High** (`j >= k`): a recursively grown lower fringe `L_j` whose sumset
//!   misses exactly `2x_1, ..., 2x_j`, mirrored at the top through the
//!   offsets `L_j ∪ {x_1..x_j}`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MstdError, Result};
use crate::sets::{diffset, sumset, IntSet};
use crate::stats::Proportion;

const BLOCK: [u64; 11] = [0, 1, 2, 4, 5, 9, 12, 13, 14, 16, 17];
const PERIOD: u64 = 12;

/// Largest `j` accepted by the high-fringe recursion (`m_j` grows like `7 * 3^j`).
pub const MAX_HIGH_LEVEL: u32 = 16;

/// `max X_k = 12k + 5`.
pub fn low_max(k: u32) -> u64 {
    PERIOD * k as u64 + 5
}

/// `X_k`: the union of `BLOCK + 12t` for `0 <= t < k`.
pub fn case1_xk(k: u32) -> Result<IntSet> {
    if k == 0 {
        return Err(MstdError::Domain("X_k needs k >= 1".into()));
    }
    IntSet::collect((0..k as u64).flat_map(|t| BLOCK.iter().map(move |&b| b + PERIOD * t)))
}

/// `X_{j,k} = X_k \ {12(k - t) + 1 : 0 <= t < j}`.
pub fn case1_xjk(j: u32, k: u32) -> Result<IntSet> {
    if j > k {
        return Err(MstdError::Domain(format!(
            "X_(j,k) needs j <= k, got j={j}, k={k}"
        )));
    }
    let xk = case1_xk(k)?;
    if j == 0 {
        return Ok(xk);
    }
    let removed = IntSet::collect((0..j as u64).map(|t| PERIOD * (k as u64 - t) + 1))?;
    xk.without(&removed)
}

/// `m_j = 7 * 3^j - 8` (so `m_0 = -1`).
pub fn high_max(j: u32) -> i64 {
    7 * 3i64.pow(j) - 8
}

/// The lower fringe `L_j ⊆ [0, m_j]` and `m_j`; `L_0` is empty.
///
/// `L_{i+1} = L_i ⊔ ((m_i + 1) + {0, 1, 2, 5} ⊔ [m_i + 10, 2m_i + 15])`.
pub fn case2_lj(j: u32) -> Result<(Vec<u64>, i64)> {
    if j > MAX_HIGH_LEVEL {
        return Err(MstdError::Domain(format!(
            "fringe level {j} exceeds {MAX_HIGH_LEVEL}"
        )));
    }
    let mut set = Vec::new();
    let mut m: i64 = -1;
    for _ in 0..j {
        let base = (m + 1) as u64;
        let head = [0u64, 1, 2, 5].into_iter();
        let tail = (m + 10) as u64..=(2 * m + 15) as u64;
        set.extend(head.chain(tail).map(|o| base + o));
        m = 3 * m + 16;
    }
    Ok((set, m))
}

/// `x_t = m_{t-1} + 5` for `t = 1..=j`: half of each sum missing from `L_j + L_j`.
pub fn case2_x(j: u32) -> Vec<u64> {
    (0..j).map(|t| (high_max(t) + 5) as u64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    /// Periodic-block fringes, for `j <= k`.
    CaseI,
    /// Recursive fringes, for `j >= k`.
    CaseII,
}

/// Sum and difference deficiencies requested inside `[0, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyTarget {
    pub j: u32,
    pub k: u32,
    pub n: u64,
}

impl DeficiencyTarget {
    pub fn new(j: u32, k: u32, n: u64) -> Self {
        DeficiencyTarget { j, k, n }
    }
}

/// Fixed fringes for one `(j, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FringePair {
    pub j: u32,
    pub k: u32,
    pub case_tag: CaseTag,
    /// `L`, sorted.
    pub lower: Vec<u64>,
    /// Offsets `o` with `n - o` in the upper fringe, sorted.
    pub upper_offsets: Vec<u64>,
    /// Radius of the zones where the prescribed holes live.
    pub fringe_radius: u64,
    /// The free middle is the open interval `(margin, n - margin)`.
    pub margin: i64,
    /// Smallest admissible ambient `n`.
    pub min_n: u64,
    /// `x_1 < ... < x_j` for the high family.
    pub x_list: Vec<u64>,
}

impl FringePair {
    /// Fringes for `(j, k)` with the default case: low for `1 <= k` and
    /// `j <= k`, high otherwise; `(0, 0)` gets empty fringes.
    pub fn new(j: u32, k: u32) -> Result<Self> {
        let case = if k >= 1 && j <= k {
            CaseTag::CaseI
        } else {
            CaseTag::CaseII
        };
        Self::with_case(j, k, case)
    }

    pub fn with_case(j: u32, k: u32, case: CaseTag) -> Result<Self> {
        if (j, k) == (0, 0) {
            return Ok(FringePair {
                j,
                k,
                case_tag: CaseTag::CaseI,
                lower: Vec::new(),
                upper_offsets: Vec::new(),
                fringe_radius: 0,
                margin: -1,
                min_n: 0,
                x_list: Vec::new(),
            });
        }
        match case {
            CaseTag::CaseI => Self::low(j, k),
            CaseTag::CaseII => Self::high(j, k),
        }
    }

    fn low(j: u32, k: u32) -> Result<Self> {
        if k == 0 || j > k {
            return Err(MstdError::Domain(format!(
                "the periodic fringe needs 1 <= k and j <= k, got j={j}, k={k}"
            )));
        }
        let m = low_max(k);
        let xk = case1_xk(k)?;
        let xjk = case1_xjk(j, k)?;
        let top = (m + 1)..=(2 * m);
        let mut lower: Vec<u64> = xjk.iter().map(|x| m - x).chain(top.clone()).collect();
        lower.sort_unstable();
        let upper_offsets: Vec<u64> = xk.iter().chain(top).collect();
        Ok(FringePair {
            j,
            k,
            case_tag: CaseTag::CaseI,
            lower,
            upper_offsets,
            fringe_radius: 4 * m,
            margin: 2 * m as i64,
            min_n: 4 * m + 1,
            x_list: Vec::new(),
        })
    }

    fn high(j: u32, k: u32) -> Result<Self> {
        if j < k || j == 0 {
            return Err(MstdError::Domain(format!(
                "the recursive fringe needs j >= k and j >= 1, got j={j}, k={k}"
            )));
        }
        // k = 0 borrows the level j + 2 fringe with x_1 added back to L.
        let level = if k == 0 { j + 2 } else { j };
        let (base, m) = case2_lj(level)?;
        let x = case2_x(level);
        let mut lower = base.clone();
        let steps = if k == 0 {
            lower.push(x[0]);
            j + 1
        } else {
            j - k
        };
        lower.extend((1..=steps as usize).map(|t| 2 * x[t] - x[t - 1]));
        lower.sort_unstable();
        lower.dedup();
        let mut upper_offsets: Vec<u64> = base.into_iter().chain(x.iter().copied()).collect();
        upper_offsets.sort_unstable();
        upper_offsets.dedup();
        let m = m as u64;
        Ok(FringePair {
            j,
            k,
            case_tag: CaseTag::CaseII,
            lower,
            upper_offsets,
            fringe_radius: 2 * m,
            margin: m as i64,
            min_n: 2 * m + 1,
            x_list: x,
        })
    }

    /// The middle interval `(margin, n - margin)` as inclusive bounds, or
    /// `None` when it is empty.
    pub fn middle(&self, n: u64) -> Option<(u64, u64)> {
        let lo = self.margin + 1;
        let hi = n as i64 - self.margin - 1;
        (lo <= hi).then_some((lo as u64, hi as u64))
    }
}

/// How the free middle is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fill {
    /// The entire middle interval.
    Full,
    /// Each middle element independently with probability 1/2, drawn from
    /// ChaCha8 seeded with `seed` on stream `stream`.
    Random { seed: u64, stream: u64 },
}

impl Fill {
    pub fn random(seed: u64) -> Self {
        Fill::Random { seed, stream: 0 }
    }
}

/// `L ⊔ R ⊔ (n - U)` as a sorted element list; may be empty only for `(0, 0)`
/// with a random fill.
fn assemble_elements(pair: &FringePair, n: u64, fill: Fill) -> Result<Vec<u64>> {
    if n < pair.min_n {
        return Err(MstdError::Domain(format!(
            "n = {n} is below the minimum {} for (j, k) = ({}, {})",
            pair.min_n, pair.j, pair.k
        )));
    }
    let mut out: Vec<u64> = pair.lower.clone();
    out.extend(pair.upper_offsets.iter().map(|&o| n - o));
    if let Some((lo, hi)) = pair.middle(n) {
        match fill {
            Fill::Full => out.extend(lo..=hi),
            Fill::Random { seed, stream } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(stream);
                let mut x = lo;
                while x <= hi {
                    let word = rng.next_u64();
                    let take = (hi - x + 1).min(64);
                    out.extend((0..take).filter(|b| word >> b & 1 == 1).map(|b| x + b));
                    x += take;
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A set in `[0, n]` built from the default fringes for `(j, k)`.
pub fn assemble_ajk(target: DeficiencyTarget, fill: Fill) -> Result<IntSet> {
    let pair = FringePair::new(target.j, target.k)?;
    assemble_with(&pair, target.n, fill)
}

pub fn assemble_with(pair: &FringePair, n: u64, fill: Fill) -> Result<IntSet> {
    IntSet::new(assemble_elements(pair, n, fill)?)
}

/// Outcome of checking a set against a deficiency target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetCertificate {
    pub verified: bool,
    pub sum_size: usize,
    pub diff_size: usize,
    /// Elements of `[0, 2n]` missing from `A + A`.
    pub missing_sums: Vec<u64>,
    /// Elements of `[1, n]` missing from `A - A`.
    pub missing_diffs: Vec<u64>,
}

/// Checks `|A+A| = (2n+1) - j` and `|A-A| = (2n+1) - 2k` with all sizes taken
/// in the ambient `[0, 2n]` and `[-n, n]`.
pub fn verify_target(a: &IntSet, target: DeficiencyTarget) -> Result<TargetCertificate> {
    let n = target.n;
    if a.max() > n {
        return Err(MstdError::Domain(format!(
            "max {} exceeds n = {n}",
            a.max()
        )));
    }
    let sums = sumset(a);
    let diffs = diffset(a);
    let missing_sums: Vec<u64> = (0..=2 * n).filter(|&x| !sums.contains(x)).collect();
    let missing_diffs: Vec<u64> = (1..=n).filter(|&d| !diffs.nonneg().contains(d)).collect();
    let verified =
        missing_sums.len() == target.j as usize && missing_diffs.len() == target.k as usize;
    Ok(TargetCertificate {
        verified,
        sum_size: sums.len(),
        diff_size: diffs.size(),
        missing_sums,
        missing_diffs,
    })
}

fn hits_target(pair: &FringePair, target: DeficiencyTarget, fill: Fill) -> Result<bool> {
    let elems = assemble_elements(pair, target.n, fill)?;
    if elems.is_empty() {
        return Ok(false);
    }
    Ok(verify_target(&IntSet::new(elems)?, target)?.verified)
}

/// Fraction of random-middle sets hitting the target. Sample `i` uses stream
/// `i` of the seeded generator, so the estimate does not depend on how the
/// samples are split across threads.
pub fn estimate_cjk(target: DeficiencyTarget, samples: u64, seed: u64) -> Result<Proportion> {
    if samples == 0 {
        return Err(MstdError::Domain("need at least one sample".into()));
    }
    let pair = FringePair::new(target.j, target.k)?;
    if target.n < pair.min_n {
        return Err(MstdError::Domain(format!(
            "n = {} is below the minimum {}",
            target.n, pair.min_n
        )));
    }
    let hits = (0..samples)
        .into_par_iter()
        .map(|i| hits_target(&pair, target, Fill::Random { seed, stream: i }))
        .try_fold(|| 0u64, |acc, hit| hit.map(|h| acc + h as u64))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(Proportion::new(hits, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::catalog;
    use crate::sets::profile;

    fn set(v: &[u64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn periodic_blocks() {
        assert_eq!(case1_xk(1).unwrap(), catalog("A_12").unwrap());
        let x2 = case1_xk(2).unwrap();
        assert_eq!(x2, catalog("A_3").unwrap());
        let p = profile(&x2);
        assert_eq!((p.sum_size, p.diff_size), (59, 55));
        let x3 = case1_xk(3).unwrap();
        assert_eq!(x3.max(), 41);
        let p = profile(&x3);
        assert_eq!((p.sum_size, p.diff_size), (83, 77));
        assert!(case1_xk(0).is_err());
    }

    #[test]
    fn periodic_blocks_with_holes() {
        assert_eq!(case1_xjk(0, 3).unwrap(), case1_xk(3).unwrap());
        let x11 = case1_xjk(1, 1).unwrap();
        assert_eq!(x11, set(&[0, 1, 2, 4, 5, 9, 12, 14, 16, 17]));
        assert_eq!(profile(&x11).missing_sums, vec![27]);
        let x22 = case1_xjk(2, 2).unwrap();
        let p = profile(&x22);
        // Holes sit at 12(2k - t) + 3, i.e. {39, 51}; 27 = 1 + 26 survives.
        assert_eq!(p.missing_sums, vec![39, 51]);
        assert_eq!(diffset(&x22), diffset(&case1_xk(2).unwrap()));
        assert!(case1_xjk(3, 2).is_err());
    }

    #[test]
    fn recursive_fringe_first_levels() {
        let (l0, m0) = case2_lj(0).unwrap();
        assert!(l0.is_empty());
        assert_eq!(m0, -1);
        let (l1, m1) = case2_lj(1).unwrap();
        assert_eq!(m1, 13);
        assert_eq!(l1, vec![0, 1, 2, 5, 9, 10, 11, 12, 13]);
        let s = sumset(&IntSet::new(l1).unwrap());
        let missing: Vec<u64> = (0..=26).filter(|&x| !s.contains(x)).collect();
        assert_eq!(missing, vec![8]);
        let (l2, m2) = case2_lj(2).unwrap();
        assert_eq!((m2, l2.len()), (55, 32));
        assert_eq!(case2_x(3), vec![4, 18, 60]);
    }

    #[test]
    fn assemble_examples() {
        let a = assemble_ajk(DeficiencyTarget::new(1, 1, 69), Fill::Full).unwrap();
        let p = profile(&a);
        assert_eq!((p.sum_size, p.diff_size), (138, 137));

        let b = assemble_ajk(DeficiencyTarget::new(2, 1, 111), Fill::Full).unwrap();
        let p = profile(&b);
        assert_eq!((p.sum_size, p.diff_size), (221, 221));

        let c = assemble_ajk(DeficiencyTarget::new(0, 0, 10), Fill::Full).unwrap();
        assert_eq!(c, IntSet::interval(0, 10).unwrap());
        let p = profile(&c);
        assert_eq!((p.sum_size, p.diff_size), (21, 21));
    }

    #[test]
    fn assemble_rejects_small_n() {
        assert!(matches!(
            assemble_ajk(DeficiencyTarget::new(1, 1, 68), Fill::Full),
            Err(MstdError::Domain(_))
        ));
        assert!(matches!(
            assemble_ajk(DeficiencyTarget::new(2, 1, 110), Fill::Full),
            Err(MstdError::Domain(_))
        ));
    }

    #[test]
    fn verify_examples() {
        let cert =
            verify_target(&catalog("A_12").unwrap(), DeficiencyTarget::new(0, 1, 17)).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.missing_diffs, vec![6]);
        assert!(cert.missing_sums.is_empty());

        let full = IntSet::interval(0, 25).unwrap();
        assert!(
            verify_target(&full, DeficiencyTarget::new(0, 0, 25))
                .unwrap()
                .verified
        );

        let a = assemble_ajk(DeficiencyTarget::new(1, 1, 69), Fill::Full).unwrap();
        let cert = verify_target(&a, DeficiencyTarget::new(1, 1, 69)).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.missing_diffs, vec![58]);

        assert!(verify_target(&full, DeficiencyTarget::new(0, 0, 20)).is_err());
    }

    #[test]
    fn random_fill_is_reproducible() {
        let t = DeficiencyTarget::new(1, 1, 120);
        let a = assemble_ajk(t, Fill::random(7)).unwrap();
        let b = assemble_ajk(t, Fill::random(7)).unwrap();
        let c = assemble_ajk(t, Fill::Random { seed: 7, stream: 1 }).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let pair = FringePair::new(1, 1).unwrap();
        assert!(pair.lower.iter().all(|&x| a.contains(x)));
        assert!(pair.upper_offsets.iter().all(|&o| a.contains(120 - o)));
    }

    #[test]
    fn estimates() {
        let t = DeficiencyTarget::new(1, 1, 69);
        let e1 = estimate_cjk(t, 2_000, 42).unwrap();
        let e2 = estimate_cjk(t, 2_000, 42).unwrap();
        assert_eq!(e1, e2);
        assert!(e1.hits > 0);
        assert!(estimate_cjk(t, 0, 1).is_err());
        assert!(estimate_cjk(DeficiencyTarget::new(1, 1, 60), 10, 1).is_err());
    }
}
